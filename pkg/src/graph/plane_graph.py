"""Plane graphs stored as rotation systems.

A ``PlaneGraph`` keeps, for every vertex, its neighbors in clockwise order.
Faces are traced with the rule: the dart after ``u -> v`` is ``v -> w`` where
``w`` precedes ``u`` in the clockwise rotation at ``v``. This is the convention
networkx uses for ``PlanarEmbedding.traverse_face``.
"""

from collections import Counter
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, model_validator

from src.errors import (
    DisconnectedError,
    InvalidRotationError,
    NonPlanarError,
    NotACycleError,
    NotSimpleError,
)
from src.models.graph import CycleSplit, Face

Rotation = Dict[int, Tuple[int, ...]]
GraphLike = Union["PlaneGraph", nx.Graph]


def _canonical_cycle_order(order: Sequence[int]) -> Tuple[int, ...]:
    if not order:
        return ()
    start = order.index(min(order))
    return tuple(order[start:]) + tuple(order[:start])


class PlaneGraph(BaseModel):
    """Simple connected graph with a clockwise rotation system."""

    model_config = ConfigDict(frozen=True)

    rotation: Rotation

    @model_validator(mode="after")
    def _validate_rotation(self) -> "PlaneGraph":
        if not self.rotation:
            raise InvalidRotationError("a plane graph needs at least one vertex")
        for v, order in self.rotation.items():
            if len(set(order)) != len(order):
                raise NotSimpleError(f"vertex {v} lists a neighbor twice")
            if v in order:
                raise NotSimpleError(f"loop at vertex {v}")
            for w in order:
                if w not in self.rotation:
                    raise InvalidRotationError(f"vertex {v} lists unknown neighbor {w}")
                if v not in self.rotation[w]:
                    raise InvalidRotationError(f"edge {v}-{w} missing from rotation at {w}")
        if not nx.is_connected(self.graph):
            raise DisconnectedError("plane graph must be connected")
        n, m, f = self.n, self.m, len(self.faces)
        if n - m + f != 2:
            raise InvalidRotationError(f"rotation is not a sphere embedding: n-m+f = {n - m + f}")
        return self

    @property
    def n(self) -> int:
        return len(self.rotation)

    @property
    def m(self) -> int:
        return sum(len(order) for order in self.rotation.values()) // 2

    @property
    def vertices(self) -> List[int]:
        return sorted(self.rotation)

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.rotation))
        graph.add_edges_from(sorted(self.edges))
        return graph

    @cached_property
    def edges(self) -> List[Tuple[int, int]]:
        return sorted((v, w) for v, order in self.rotation.items() for w in order if v < w)

    @cached_property
    def faces(self) -> List[Face]:
        return _trace_faces(self.rotation)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.rotation[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.rotation and v in self.rotation[u]

    def __contains__(self, v: object) -> bool:
        return v in self.rotation


def _trace_faces(rotation: Rotation) -> List[Face]:
    if len(rotation) == 1 and not next(iter(rotation.values())):
        return [Face(boundary=())]
    position = {v: {w: i for i, w in enumerate(order)} for v, order in rotation.items()}
    darts = sorted((v, w) for v, order in rotation.items() for w in order)
    seen: Set[Tuple[int, int]] = set()
    result: List[Face] = []
    for dart in darts:
        if dart in seen:
            continue
        boundary = []
        u, v = dart
        while (u, v) not in seen:
            seen.add((u, v))
            boundary.append((u, v))
            order = rotation[v]
            w = order[(position[v][u] - 1) % len(order)]
            u, v = v, w
        result.append(Face(boundary=tuple(boundary)))
    return result


def as_nx(g: GraphLike) -> nx.Graph:
    return g.graph if isinstance(g, PlaneGraph) else g


def build_embedding(
    adjacency: Iterable[Tuple[int, int]],
    vertices: Optional[Iterable[int]] = None,
) -> PlaneGraph:
    """Embed a simple connected planar graph given as an edge list.

    The result only depends on the set of edges, not their order.
    """
    pairs = [tuple(edge) for edge in adjacency]
    seen: Set[Tuple[int, int]] = set()
    for u, v in pairs:
        if u == v:
            raise NotSimpleError(f"loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise NotSimpleError(f"parallel edge {key[0]}-{key[1]}")
        seen.add(key)
    nodes = set(vertices or ())
    for u, v in seen:
        nodes.update((u, v))
    if not nodes:
        raise DisconnectedError("empty graph")
    graph = nx.Graph()
    graph.add_nodes_from(sorted(nodes))
    graph.add_edges_from(sorted(seen))
    return embed_graph(graph)


def embed_graph(graph: nx.Graph) -> PlaneGraph:
    if graph.number_of_nodes() == 0:
        raise DisconnectedError("empty graph")
    if nx.number_of_selfloops(graph):
        raise NotSimpleError("graph has loops")
    if not nx.is_connected(graph):
        raise DisconnectedError(f"graph has {nx.number_connected_components(graph)} components")
    canonical = nx.Graph()
    canonical.add_nodes_from(sorted(graph.nodes))
    canonical.add_edges_from(sorted((min(u, v), max(u, v)) for u, v in graph.edges))
    is_planar, embedding = nx.check_planarity(canonical)
    if not is_planar:
        raise NonPlanarError(
            f"graph with n={canonical.number_of_nodes()} m={canonical.number_of_edges()} is not planar"
        )
    rotation = {
        v: _canonical_cycle_order(list(embedding.neighbors_cw_order(v))) for v in sorted(canonical.nodes)
    }
    return PlaneGraph(rotation=rotation)


def faces(g: PlaneGraph) -> List[Face]:
    return list(g.faces)


def face_census(g: PlaneGraph) -> Dict[int, int]:
    """Number of faces of each length, keyed by length."""
    return dict(sorted(Counter(face.length for face in g.faces).items()))


def triangles(g: GraphLike) -> List[Tuple[int, int, int]]:
    """All 3-cycles as sorted vertex triples, facial or not."""
    graph = as_nx(g)
    found = []
    for u in sorted(graph.nodes):
        higher = sorted(w for w in graph.neighbors(u) if w > u)
        for i, v in enumerate(higher):
            for w in higher[i + 1:]:
                if graph.has_edge(v, w):
                    found.append((u, v, w))
    return found


def triangle_count(g: GraphLike) -> int:
    return len(triangles(g))


def validate_cycle(g: GraphLike, cycle: Sequence[int]) -> Tuple[int, ...]:
    graph = as_nx(g)
    cycle = tuple(cycle)
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise NotACycleError(f"{list(cycle)} is not a simple cycle")
    for i, v in enumerate(cycle):
        if v not in graph:
            raise NotACycleError(f"vertex {v} is not in the graph")
        w = cycle[(i + 1) % len(cycle)]
        if not graph.has_edge(v, w):
            raise NotACycleError(f"{v}-{w} is not an edge, so {list(cycle)} is not a cycle")
    return cycle


def split_by_cycle(g: PlaneGraph, cycle: Sequence[int]) -> CycleSplit:
    """Partition V(G) - V(C) into the two sides of C.

    The interior is the side the traversal direction keeps on its face side,
    so the walk of any face has an empty interior and reversing the cycle
    swaps the sides.
    """
    cycle = validate_cycle(g, cycle)
    on_cycle = set(cycle)
    seeds: Set[int] = set()
    length = len(cycle)
    for i, v in enumerate(cycle):
        prev, nxt = cycle[i - 1], cycle[(i + 1) % length]
        order = g.rotation[v]
        j = (order.index(nxt) + 1) % len(order)
        while order[j] != prev:
            if order[j] not in on_cycle:
                seeds.add(order[j])
            j = (j + 1) % len(order)
    rest = g.graph.subgraph(set(g.rotation) - on_cycle)
    interior: Set[int] = set()
    for seed in seeds:
        if seed not in interior:
            interior.update(nx.node_connected_component(rest, seed))
    exterior = set(rest.nodes) - interior
    return CycleSplit(cycle=cycle, interior=frozenset(interior), exterior=frozenset(exterior))


def canonical_cycle(cycle: Sequence[int]) -> Tuple[int, ...]:
    """Rotate to start at the smallest vertex, then pick the direction with the smaller successor."""
    rotated = _canonical_cycle_order(list(cycle))
    reverse = (rotated[0],) + tuple(reversed(rotated[1:]))
    return min(rotated, reverse)


def short_cycles(g: GraphLike, max_length: int) -> List[Tuple[int, ...]]:
    """All simple cycles of length 3..max_length, canonical and sorted."""
    graph = as_nx(g)
    if max_length < 3:
        return []
    cycles = {canonical_cycle(c) for c in nx.simple_cycles(graph, length_bound=max_length) if len(c) >= 3}
    return sorted(cycles, key=lambda c: (len(c), c))


def is_facial(g: PlaneGraph, cycle: Sequence[int]) -> bool:
    """Whether the cycle, in either direction, is the walk of some face."""
    target = canonical_cycle(validate_cycle(g, cycle))
    return any(face.is_simple_cycle() and canonical_cycle(face.vertices) == target for face in g.faces)


def separating_cycles(g: PlaneGraph, max_length: int) -> List[CycleSplit]:
    result = []
    for cycle in short_cycles(g, max_length):
        split = split_by_cycle(g, cycle)
        if split.is_separating:
            result.append(split)
    return result


def induced_plane_subgraph(g: PlaneGraph, keep: Iterable[int]) -> PlaneGraph:
    """Restrict the rotation system to ``keep``; the result inherits g's embedding."""
    kept = set(keep)
    rotation = {
        v: _canonical_cycle_order([w for w in g.rotation[v] if w in kept]) for v in sorted(kept)
    }
    return PlaneGraph(rotation=rotation)


def counting_identities(g: PlaneGraph) -> Dict[str, bool]:
    """Euler, face handshake, and the one-triangle/no-4-face edge bound."""
    census = face_census(g)
    f = len(g.faces)
    checks = {
        "euler": g.n - g.m + f == 2,
        "handshake": sum(length * count for length, count in census.items()) == 2 * g.m,
    }
    if census.get(4, 0) == 0 and census.get(3, 0) == 1:
        checks["one_triangle_bound"] = 2 * g.m >= 5 * f - 2
    return checks
