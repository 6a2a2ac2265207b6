"""Named constructions and 4-Ore graph generation."""

import random
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional

import networkx as nx
from loguru import logger

from config.settings import settings
from src.catalog.enumerate import IsomorphismIndex
from src.errors import CapExceededError
from src.graph.plane_graph import PlaneGraph, build_embedding
from src.graph.surgery import dhgo_compose
from src.models.graph import DhgoSpec

# K4 with the three edges at the apex subdivided: apex 0, subdivisions 1..3, base triangle 4, 5, 6.
K4PRIME_EDGES = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (4, 5), (5, 6), (4, 6)]

# 4-face v1..v4 = 0..3 with triangle z v1 v2 and paths v2 z x v4, v1 z y v3; x = 4, y = 5, z = 6.
LEMMA10_EDGES = [(0, 1), (1, 2), (2, 3), (3, 0), (6, 0), (6, 1), (4, 6), (4, 3), (5, 6), (5, 2)]


def make_k4prime() -> PlaneGraph:
    return build_embedding(K4PRIME_EDGES)


def make_lemma10_configuration() -> PlaneGraph:
    return build_embedding(LEMMA10_EDGES)


def _integers(graph: nx.Graph) -> nx.Graph:
    return nx.convert_node_labels_to_integers(graph, ordering="sorted")


def _from_edges(edges) -> nx.Graph:
    graph = nx.Graph()
    graph.add_edges_from(edges)
    return graph


def moser_spindle() -> nx.Graph:
    """O(K4, K4): two rhombi sharing an apex with their far tips joined."""
    return _from_edges([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (4, 5), (4, 6), (5, 6), (3, 6)])


NAMED: Dict[str, Callable[[], nx.Graph]] = {
    "K3": lambda: nx.complete_graph(3),
    "K4": lambda: nx.complete_graph(4),
    "K5": lambda: nx.complete_graph(5),
    "C4": lambda: nx.cycle_graph(4),
    "C5": lambda: nx.cycle_graph(5),
    "P3": lambda: nx.path_graph(3),
    "K1,3": lambda: nx.star_graph(3),
    "Q3": lambda: _integers(nx.hypercube_graph(3)),
    "octahedron": lambda: nx.octahedral_graph(),
    "W5": lambda: nx.wheel_graph(6),
    "W7": lambda: nx.wheel_graph(8),
    "K4'": lambda: _from_edges(K4PRIME_EDGES),
    "lemma10": lambda: _from_edges(LEMMA10_EDGES),
    "moser": moser_spindle,
}


def named_graph(name: str) -> nx.Graph:
    if name.startswith("C") and name[1:].isdigit():
        return nx.cycle_graph(int(name[1:]))
    try:
        return NAMED[name]()
    except KeyError:
        raise KeyError(f"unknown graph {name!r}; known: {sorted(NAMED)}") from None


def _ordered_splits(neighbors: List[int]) -> Iterator[tuple]:
    for size in range(1, len(neighbors)):
        for first in combinations(neighbors, size):
            second = frozenset(neighbors) - frozenset(first)
            yield frozenset(first), second


def ore_compositions(g1: nx.Graph, g2: nx.Graph) -> Iterator[nx.Graph]:
    """Every DHGO composition of g1 and g2 (edge of g1, vertex and split of g2)."""
    for x, y in sorted((min(a, b), max(a, b)) for a, b in g1.edges):
        for z in sorted(g2.nodes):
            for partition in _ordered_splits(sorted(g2.neighbors(z))):
                spec = DhgoSpec(g1=g1, xy=(x, y), g2=g2, z=z, partition=partition)
                yield _integers(dhgo_compose(spec))


def generate_4ore(depth: int, seed: Optional[int] = None, limit: Optional[int] = None) -> Iterator[nx.Graph]:
    """4-Ore graphs built from K4 copies by exactly ``depth`` compositions, one per class.

    With ``limit`` a seeded sample of at most that many graphs is returned from
    the final level; intermediate levels are always complete.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    n = 4 + 3 * depth
    if n > settings.ore_max_vertices:
        raise CapExceededError(f"depth {depth} gives n={n}, above the 4-Ore cap of {settings.ore_max_vertices}")
    levels: List[List[nx.Graph]] = [[nx.complete_graph(4)]]
    for d in range(1, depth + 1):
        index = IsomorphismIndex()
        for a in range(d):
            b = d - 1 - a
            for g1 in levels[a]:
                for g2 in levels[b]:
                    for composed in ore_compositions(g1, g2):
                        index.add(composed)
        logger.info(f"4-Ore depth {d}: {len(index)} classes on {4 + 3 * d} vertices")
        levels.append(index.representatives)
    result = levels[depth]
    if limit is not None and limit < len(result):
        rng = random.Random(settings.random_seed if seed is None else seed)
        chosen = sorted(rng.sample(range(len(result)), limit))
        result = [result[i] for i in chosen]
    yield from result
