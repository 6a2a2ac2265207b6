"""Edge bounds for 4-critical graphs and the four-triangle characterization of 4-Ore graphs."""

from typing import Dict, Iterable, Tuple

import networkx as nx
from loguru import logger

from src.catalog.families import generate_4ore
from src.coloring.colorer import is_k_critical
from src.errors import NonPlanarError, NotCriticalError
from src.graph.plane_graph import GraphLike, as_nx, embed_graph, face_census, triangle_count
from src.models.report import Failure, Report, TheoremId


def ky_sides(g: GraphLike) -> Tuple[int, int]:
    """(3m, 5n - 2)."""
    graph = as_nx(g)
    return 3 * graph.number_of_edges(), 5 * graph.number_of_nodes() - 2


def check_ky_bound(g: GraphLike) -> Tuple[bool, bool]:
    """(3m >= 5n - 2, 3m == 5n - 2) for a 4-critical graph."""
    if not is_k_critical(g, 4):
        raise NotCriticalError("graph is not 4-critical")
    lhs, rhs = ky_sides(g)
    return lhs >= rhs, lhs == rhs


def is_pl44f(g: GraphLike) -> bool:
    """Planar, exactly four triangles, and no 4-face in the canonical embedding."""
    graph = as_nx(g)
    if triangle_count(graph) != 4:
        return False
    try:
        plane = embed_graph(graph)
    except NonPlanarError:
        return False
    return face_census(plane).get(4, 0) == 0


def check_pl44f(g: GraphLike) -> bool:
    """Whether "exactly four triangles" and "Pl(4,4f)" agree on g."""
    return (triangle_count(g) == 4) == is_pl44f(g)


def _rotation_of(graph: nx.Graph):
    try:
        return embed_graph(graph).rotation
    except NonPlanarError:
        return {v: tuple(sorted(graph.neighbors(v))) for v in sorted(graph.nodes)}


def audit_ore_graphs(graphs: Iterable[nx.Graph]) -> Dict[TheoremId, Report]:
    """Check equality in the edge bound, criticality, and the triangle statements on 4-Ore graphs."""
    ky = Report(theorem=TheoremId.KY_BOUND)
    pl = Report(theorem=TheoremId.T15_PL44F)
    for graph in graphs:
        lhs, rhs = ky_sides(graph)
        ky.instances_checked += 1
        if lhs != rhs or not is_k_critical(graph, 4):
            ky.failures.append(
                Failure(theorem=TheoremId.KY_BOUND, rotation=_rotation_of(graph),
                        detail=f"3m={lhs} 5n-2={rhs} critical={is_k_critical(graph, 4)}")
            )
        count = triangle_count(graph)
        pl.instances_checked += 1
        if count < 4 or not check_pl44f(graph):
            pl.failures.append(
                Failure(theorem=TheoremId.T15_PL44F, rotation=_rotation_of(graph),
                        detail=f"triangles={count} pl44f={is_pl44f(graph)}")
            )
    logger.info(f"4-Ore audit: {ky.instances_checked} graphs, {len(ky.failures)} bound failures, "
                f"{len(pl.failures)} triangle failures")
    return {TheoremId.KY_BOUND: ky, TheoremId.T15_PL44F: pl}


def audit_4ore(max_depth: int) -> Dict[TheoremId, Report]:
    reports: Dict[TheoremId, Report] = {}
    for depth in range(max_depth + 1):
        for theorem, report in audit_ore_graphs(generate_4ore(depth)).items():
            reports[theorem] = reports[theorem].merge(report) if theorem in reports else report
    return reports
