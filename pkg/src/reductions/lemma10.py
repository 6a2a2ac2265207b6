"""Diagonal identification analysis for 4-faces.

For a 4-face v1 v2 v3 v4 with both diagonals absent, identifying v1 with v3
(index 1) or v2 with v4 (index 2) is *safe* when the triangle census does not
grow. When both identifications grow it, a triangle v_i v_{i+1} z sits on the
face together with paths v_{i+1} z x v_{i+3} and v_i z y v_{i+2}.
"""

from typing import List, Optional, Sequence, Tuple, Union

from loguru import logger

from src.errors import DiagonalPresentError, EngineError, NotACycleError, TooManyTrianglesError
from src.graph.plane_graph import GraphLike, as_nx, triangle_count, triangles, validate_cycle
from src.graph.surgery import identify
from src.models.graph import (
    Corollary4Case,
    Corollary4Kind,
    Face,
    Lemma10Outcome,
    Lemma10Witness,
)

FaceLike = Union[Face, Sequence[int]]


def face_quad(g: GraphLike, face: FaceLike) -> Tuple[int, int, int, int]:
    vertices = face.vertices if isinstance(face, Face) else tuple(face)
    if len(vertices) != 4:
        raise NotACycleError(f"expected a 4-face, got a walk of length {len(vertices)}")
    return validate_cycle(g, vertices)


def diagonal(quad: Sequence[int], index: int) -> Tuple[int, int]:
    """Vertex pair identified by diagonal ``index`` (1: v1v3, 2: v2v4)."""
    if index not in (1, 2):
        raise ValueError(f"diagonal index must be 1 or 2, got {index}")
    return quad[index - 1], quad[index + 1]


def find_witness(g: GraphLike, quad: Sequence[int]) -> Optional[Lemma10Witness]:
    graph = as_nx(g)
    on_face = set(quad)
    for i in range(4):
        a, b, c, d = (quad[(i + j) % 4] for j in range(4))
        common = sorted(set(graph.neighbors(a)) & set(graph.neighbors(b)) - on_face)
        for z in common:
            around = set(graph.neighbors(z)) - on_face - {z}
            xs = sorted(w for w in around if graph.has_edge(w, d))
            ys = sorted(w for w in around if graph.has_edge(w, c))
            if xs and ys:
                return Lemma10Witness(i=i + 1, z=z, x=xs[0], y=ys[0])
    return None


def lemma10_analyze(g: GraphLike, face: FaceLike) -> Lemma10Outcome:
    quad = face_quad(g, face)
    graph = as_nx(g)
    for index in (1, 2):
        u, v = diagonal(quad, index)
        if graph.has_edge(u, v):
            raise DiagonalPresentError(f"diagonal {u}-{v} of face {list(quad)} is an edge")
    before = triangle_count(graph)
    after = tuple(triangle_count(identify(graph, *diagonal(quad, index))) for index in (1, 2))
    for index in (1, 2):
        if after[index - 1] <= before:
            return Lemma10Outcome(
                face=quad, safe_index=index, triangles_before=before, triangles_after=after
            )
    witness = find_witness(graph, quad)
    if witness is None:
        raise EngineError(
            f"both diagonals of {list(quad)} add triangles ({before} -> {after}) but no witness exists"
        )
    return Lemma10Outcome(face=quad, witness=witness, triangles_before=before, triangles_after=after)


def safe_indices(outcome: Lemma10Outcome) -> List[int]:
    return [i for i in (1, 2) if outcome.triangles_after[i - 1] <= outcome.triangles_before]


def corollary4_case(g: GraphLike, face: FaceLike) -> Corollary4Case:
    """Either a diagonal is safe or the face shares an edge with the only triangle."""
    found = triangles(g)
    if len(found) > 1:
        raise TooManyTrianglesError(f"graph has {len(found)} triangles, at most one allowed")
    quad = face_quad(g, face)
    triangle = found[0] if found else None
    outcome = lemma10_analyze(g, quad)
    if outcome.is_safe:
        return Corollary4Case(kind=Corollary4Kind.SAFE_PAIR, safe_index=outcome.safe_index, triangle=triangle)
    face_edges = {frozenset((quad[i], quad[(i + 1) % 4])) for i in range(4)}
    if triangle is not None:
        a, b, c = triangle
        if face_edges & {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))}:
            logger.debug(f"face {list(quad)} shares an edge with triangle {triangle}")
            return Corollary4Case(kind=Corollary4Kind.ADJACENT_TO_TRIANGLE, triangle=triangle)
    raise EngineError(f"face {list(quad)} is neither safe nor adjacent to a triangle")
