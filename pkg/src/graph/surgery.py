"""Graph surgery used by the coloring arguments.

All operations take a ``PlaneGraph`` or a ``networkx.Graph`` and return a new
abstract ``networkx.Graph``; callers re-embed with ``build_embedding`` when
they need faces again. Inputs are never mutated.
"""

from typing import Iterable, Iterator, List, Optional, Set, Tuple

import networkx as nx

from src.errors import (
    AdjacentPairError,
    EdgeExistsError,
    NeighborhoodNotIndependentError,
    ResultNotSimpleError,
    UnknownEdgeError,
    UnknownVertexError,
    WrongDegreeError,
)
from src.graph.plane_graph import GraphLike, as_nx
from src.models.graph import DhgoSpec, Identification, K4PrimeOccurrence


def _copy(g: GraphLike) -> nx.Graph:
    graph = nx.Graph()
    source = as_nx(g)
    graph.add_nodes_from(sorted(source.nodes))
    graph.add_edges_from(sorted((min(u, v), max(u, v)) for u, v in source.edges))
    return graph


def _require(graph: nx.Graph, *vertices: int) -> None:
    for v in vertices:
        if v not in graph:
            raise UnknownVertexError(f"vertex {v} is not in the graph")


def is_simple(g: GraphLike) -> bool:
    graph = as_nx(g)
    return not graph.is_multigraph() and nx.number_of_selfloops(graph) == 0


def _simple(result: nx.Graph, op: str) -> nx.Graph:
    if not is_simple(result):
        raise ResultNotSimpleError(f"{op} produced a loop at {sorted(nx.nodes_with_selfloops(result))}")
    return result


def identify_detail(g: GraphLike, u: int, v: int) -> Identification:
    """Merge non-adjacent u and v into the smaller label, discarding parallels."""
    graph = as_nx(g)
    _require(graph, u, v)
    if u == v:
        raise AdjacentPairError(f"cannot identify vertex {u} with itself")
    if graph.has_edge(u, v):
        raise AdjacentPairError(f"{u} and {v} are adjacent; identifying them would create a loop")
    kept, merged = min(u, v), max(u, v)
    result = _copy(graph)
    for w in list(result.neighbors(merged)):
        result.add_edge(kept, w)
    result.remove_node(merged)
    return Identification(kept=kept, merged=merged, result=_simple(result, "identify"))


def identify(g: GraphLike, u: int, v: int) -> nx.Graph:
    return identify_detail(g, u, v).result


def contract_closed_neighborhood(g: GraphLike, u: int) -> Tuple[nx.Graph, int]:
    """Identify N[u] of a degree-3 vertex into a single vertex w (labelled u).

    Parallel edges are discarded, so the result has n - 3 vertices and
    m - 3 - (number of parallel pairs) edges.
    """
    graph = as_nx(g)
    _require(graph, u)
    neighbors = sorted(graph.neighbors(u))
    if len(neighbors) != 3:
        raise WrongDegreeError(f"vertex {u} has degree {len(neighbors)}, expected 3")
    for i, a in enumerate(neighbors):
        for b in neighbors[i + 1:]:
            if graph.has_edge(a, b):
                raise NeighborhoodNotIndependentError(f"neighbors {a} and {b} of {u} are adjacent")
    result = _copy(graph)
    for a in neighbors:
        for w in list(result.neighbors(a)):
            if w != u:
                result.add_edge(u, w)
        result.remove_node(a)
    return _simple(result, "contract_closed_neighborhood"), u


def add_edge(g: GraphLike, u: int, v: int) -> nx.Graph:
    graph = as_nx(g)
    _require(graph, u, v)
    if u == v:
        raise ResultNotSimpleError(f"edge {u}-{v} would be a loop")
    if graph.has_edge(u, v):
        raise EdgeExistsError(f"edge {u}-{v} already present")
    result = _copy(graph)
    result.add_edge(u, v)
    return _simple(result, "add_edge")


def delete_edge(g: GraphLike, edge: Tuple[int, int]) -> nx.Graph:
    graph = as_nx(g)
    u, v = edge
    if not graph.has_edge(u, v):
        raise UnknownEdgeError(f"edge {u}-{v} is not in the graph")
    result = _copy(graph)
    result.remove_edge(u, v)
    return result


def delete_vertex(g: GraphLike, v: int) -> nx.Graph:
    graph = as_nx(g)
    _require(graph, v)
    result = _copy(graph)
    result.remove_node(v)
    return result


def add_vertex(g: GraphLike, attach: Iterable[int]) -> Tuple[nx.Graph, int]:
    """Add a fresh vertex joined to ``attach``; returns the graph and the new label."""
    graph = as_nx(g)
    attach = sorted(set(attach))
    _require(graph, *attach)
    label = max(graph.nodes, default=-1) + 1
    result = _copy(graph)
    result.add_node(label)
    result.add_edges_from((label, a) for a in attach)
    return result, label


def split_vertex(
    g: GraphLike,
    z: int,
    partition: Tuple[Iterable[int], Iterable[int]],
    join: bool = False,
) -> Tuple[nx.Graph, int, int]:
    """Replace z by z1 (keeps label z) adjacent to the first part and a new z2 adjacent to the second.

    With ``join`` the two copies are made adjacent. The parts may overlap.
    """
    graph = as_nx(g)
    _require(graph, z)
    first, second = set(partition[0]), set(partition[1])
    neighbors = set(graph.neighbors(z))
    if not first <= neighbors or not second <= neighbors:
        raise UnknownVertexError(f"split parts must be neighbors of {z}")
    z2 = max(graph.nodes) + 1
    result = _copy(graph)
    for w in neighbors - first:
        result.remove_edge(z, w)
    result.add_node(z2)
    result.add_edges_from((z2, w) for w in sorted(second))
    if join:
        result.add_edge(z, z2)
    return _simple(result, "split_vertex"), z, z2


def double_vertex(g: GraphLike, v: int) -> Tuple[nx.Graph, int, int]:
    """Split v into two adjacent copies, both joined to all of N(v)."""
    graph = as_nx(g)
    _require(graph, v)
    neighbors = sorted(graph.neighbors(v))
    return split_vertex(graph, v, (neighbors, neighbors), join=True)


def dhgo_compose(spec: DhgoSpec) -> nx.Graph:
    """Delete xy from g1, split z of g2 into z1, z2, glue x=z1 and y=z2."""
    g1, g2 = spec.g1, spec.g2
    x, y = spec.xy
    offset = max(g1.nodes) + 1
    relabel = {v: offset + i for i, v in enumerate(sorted(g2.nodes)) if v != spec.z}
    first, second = spec.partition
    result = _copy(g1)
    result.remove_edge(x, y)
    for a, b in g2.edges:
        if spec.z in (a, b):
            continue
        result.add_edge(relabel[a], relabel[b])
    expected = g1.number_of_edges() + g2.number_of_edges() - 1
    for w in sorted(first):
        result.add_edge(x, relabel[w])
    for w in sorted(second):
        result.add_edge(y, relabel[w])
    if result.number_of_edges() != expected:
        raise ResultNotSimpleError(
            f"gluing produced parallel edges ({result.number_of_edges()} edges, expected {expected})"
        )
    return _simple(result, "dhgo_compose")


def iter_k4prime(g: GraphLike) -> Iterator[K4PrimeOccurrence]:
    """Every K4' subgraph whose apex has degree exactly 3 in the host.

    The base triangle is matched to the subdivision vertices in every order,
    each occurrence reported once with branch sorted.
    """
    graph = as_nx(g)
    for apex in sorted(graph.nodes):
        if graph.degree(apex) != 3:
            continue
        branch = tuple(sorted(graph.neighbors(apex)))
        seen: Set[Tuple[int, int, int]] = set()
        options = [
            sorted(w for w in graph.neighbors(s) if w != apex and w not in branch) for s in branch
        ]
        for b0 in options[0]:
            for b1 in options[1]:
                for b2 in options[2]:
                    base = (b0, b1, b2)
                    if len(set(base)) != 3 or base in seen:
                        continue
                    if graph.has_edge(b0, b1) and graph.has_edge(b1, b2) and graph.has_edge(b0, b2):
                        seen.add(base)
                        yield K4PrimeOccurrence(apex=apex, branch=branch, base=base)


def find_k4prime(g: GraphLike) -> Optional[K4PrimeOccurrence]:
    return next(iter_k4prime(g), None)


def is_k4prime_free(g: GraphLike) -> bool:
    return find_k4prime(g) is None


def independent_neighborhood(g: GraphLike, v: int) -> bool:
    graph = as_nx(g)
    neighbors = list(graph.neighbors(v))
    return not any(graph.has_edge(a, b) for i, a in enumerate(neighbors) for b in neighbors[i + 1:])


def common_neighbor_triples(g: GraphLike) -> List[Tuple[int, int, int]]:
    """Sorted triples of distinct vertices that share at least one common neighbor."""
    graph = as_nx(g)
    triples: Set[Tuple[int, int, int]] = set()
    for v in graph.nodes:
        neighbors = sorted(graph.neighbors(v))
        for i, a in enumerate(neighbors):
            for j, b in enumerate(neighbors[i + 1:], start=i + 1):
                for c in neighbors[j + 1:]:
                    triples.add((a, b, c))
    return sorted(triples)


def non_adjacent_pairs(g: GraphLike) -> List[Tuple[int, int]]:
    graph = as_nx(g)
    nodes = sorted(graph.nodes)
    return [
        (u, v) for i, u in enumerate(nodes) for v in nodes[i + 1:] if not graph.has_edge(u, v)
    ]

