"""Adynamic 3-coloring: a proper coloring where some vertex of degree >= 2 sees one color."""

from typing import List, Optional

from loguru import logger

from src.coloring.colorer import solve
from src.graph.plane_graph import GraphLike, PlaneGraph, embed_graph
from src.graph.surgery import double_vertex, independent_neighborhood
from src.models.graph import AdynamicColoring, Coloring, ConstraintSet
from src.reductions.engine import reduce_and_color


def _chain(vertices: List[int]) -> ConstraintSet:
    return ConstraintSet(equal_pairs=frozenset(zip(vertices, vertices[1:])))


def adynamic_candidates(g: PlaneGraph) -> List[int]:
    """Vertices that could witness an adynamic coloring: degree >= 2, independent neighborhood."""
    return [v for v in g.vertices if g.degree(v) >= 2 and independent_neighborhood(g, v)]


def is_adynamic(g: GraphLike, result: AdynamicColoring) -> bool:
    plane = g if isinstance(g, PlaneGraph) else embed_graph(g)
    colors = result.coloring.assignment
    v = result.witness_vertex
    if v not in plane or plane.degree(v) < 2:
        return False
    if any(colors[a] == colors[b] for a, b in plane.edges):
        return False
    return len({colors[w] for w in plane.neighbors(v)}) == 1


def adynamic_3color(g: GraphLike) -> Optional[AdynamicColoring]:
    """Find an adynamic 3-coloring, trying the constructive routes before the exact search.

    A 2-vertex is doubled into two adjacent copies joined to both neighbors;
    any coloring of that graph gives the neighbors one color. A 3-vertex goes
    through the engine with its neighborhood forced equal. Anything else falls
    back to solving each candidate exactly.
    """
    plane = g if isinstance(g, PlaneGraph) else embed_graph(g)
    candidates = adynamic_candidates(plane)
    for v in candidates:
        if plane.degree(v) != 2:
            continue
        doubled, _, _ = double_vertex(plane, v)
        coloring = reduce_and_color(embed_graph(doubled)).coloring
        if coloring is not None:
            restricted = {u: coloring[u] for u in plane.vertices}
            logger.debug(f"adynamic via doubling 2-vertex {v}")
            return AdynamicColoring(coloring=Coloring(assignment=restricted), witness_vertex=v)
    for v in candidates:
        if plane.degree(v) != 3:
            continue
        result = reduce_and_color(plane, _chain(sorted(plane.neighbors(v))))
        if result.coloring is not None:
            logger.debug(f"adynamic via monochromatic neighborhood of 3-vertex {v}")
            return AdynamicColoring(coloring=result.coloring, witness_vertex=v)
    for v in candidates:
        if plane.degree(v) <= 3:
            continue
        coloring = solve(plane, _chain(sorted(plane.neighbors(v))))
        if coloring is not None:
            return AdynamicColoring(coloring=coloring, witness_vertex=v)
    return None
