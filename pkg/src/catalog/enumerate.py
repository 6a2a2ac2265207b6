"""Exhaustive enumeration of small connected planar graphs.

Graphs on n vertices are grown from the (n-1)-vertex classes by adding a
vertex joined to a non-empty subset. Every connected graph has a vertex whose
removal keeps it connected, so this reaches all classes. Planarity and the
triangle bound are hereditary, so failing candidates are pruned early.
Isomorphic duplicates are removed with Weisfeiler-Lehman hash buckets
confirmed by VF2.
"""

from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Tuple

import networkx as nx
from loguru import logger
from tqdm import tqdm

from config.settings import settings
from src.errors import CapExceededError
from src.graph.plane_graph import PlaneGraph, embed_graph, face_census
from src.graph.surgery import independent_neighborhood, is_k4prime_free
from src.models.report import CorpusFilter, CorpusTag


class IsomorphismIndex:
    """Keeps one representative per isomorphism class, in insertion order."""

    def __init__(self):
        self._buckets: Dict[str, List[nx.Graph]] = {}
        self.representatives: List[nx.Graph] = []

    def add(self, graph: nx.Graph) -> bool:
        key = nx.weisfeiler_lehman_graph_hash(graph, iterations=3)
        key = f"{graph.number_of_nodes()}:{graph.number_of_edges()}:{key}"
        bucket = self._buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            return False
        bucket.append(graph)
        self.representatives.append(graph)
        return True

    def __len__(self) -> int:
        return len(self.representatives)


def dedup_isomorphic(graphs: Iterable[nx.Graph]) -> List[nx.Graph]:
    index = IsomorphismIndex()
    for graph in graphs:
        index.add(graph)
    return index.representatives


def _triangles_through(graph: nx.Graph, subset: Tuple[int, ...]) -> int:
    return sum(1 for a, b in combinations(subset, 2) if graph.has_edge(a, b))


def _grow(parents: List[Tuple[nx.Graph, int]], max_triangles, progress: bool) -> List[Tuple[nx.Graph, int]]:
    index = IsomorphismIndex()
    children: List[Tuple[nx.Graph, int]] = []
    for parent, triangles in tqdm(parents, disable=not progress, desc="extending", leave=False):
        nodes = sorted(parent.nodes)
        label = len(nodes)
        for size in range(1, len(nodes) + 1):
            for subset in combinations(nodes, size):
                added = _triangles_through(parent, subset)
                if max_triangles is not None and triangles + added > max_triangles:
                    continue
                child = parent.copy()
                child.add_edges_from((label, v) for v in subset)
                if not nx.check_planarity(child)[0]:
                    continue
                if index.add(child):
                    children.append((child, triangles + added))
    return children


def matches_tags(g: PlaneGraph, tags: Iterable[CorpusTag]) -> bool:
    for tag in tags:
        if tag == CorpusTag.HAS_4_FACE and face_census(g).get(4, 0) == 0:
            return False
        if tag == CorpusTag.K4PRIME_FREE and not is_k4prime_free(g):
            return False
        if tag == CorpusTag.HAS_INDEPENDENT_2PLUS and not any(
            g.degree(v) >= 2 and independent_neighborhood(g, v) for v in g.vertices
        ):
            return False
    return True


def enumerate_small_planar(filt: CorpusFilter, progress: bool = False) -> Iterator[PlaneGraph]:
    """Every connected planar graph with min_n <= n <= max_n passing the filter, one per class."""
    if filt.max_n > settings.corpus_max_vertices:
        raise CapExceededError(
            f"max_n={filt.max_n} exceeds the corpus cap of {settings.corpus_max_vertices}"
        )
    single = nx.Graph()
    single.add_node(0)
    level: List[Tuple[nx.Graph, int]] = [(single, 0)]
    for n in range(1, filt.max_n + 1):
        if n > 1:
            level = _grow(level, filt.max_triangles, progress)
        logger.debug(f"n={n}: {len(level)} classes")
        if n < filt.min_n:
            continue
        for graph, _ in level:
            plane = embed_graph(graph)
            if matches_tags(plane, filt.tags):
                yield plane
