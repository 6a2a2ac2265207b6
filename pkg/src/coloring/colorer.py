"""Exact constrained 3-coloring.

Backtracking over the quotient graph in which forced-equal vertices are merged
and forced-distinct pairs become edges. Variables are picked by saturation
(smallest remaining domain, then largest degree, then smallest label) and
colors are tried in increasing order, so results are deterministic.
"""

from itertools import product
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx
from networkx.utils import UnionFind

from config.settings import settings
from src.errors import TooLargeError
from src.graph.plane_graph import GraphLike, as_nx
from src.models.graph import COLORS, Coloring, ConstraintSet

EMPTY = ConstraintSet()


class _Quotient:
    def __init__(self, members: Dict[int, List[int]], adjacency: Dict[int, Set[int]], fixed: Dict[int, int]):
        self.members = members
        self.adjacency = adjacency
        self.fixed = fixed


def _quotient(graph: nx.Graph, cs: ConstraintSet) -> Optional[_Quotient]:
    classes = UnionFind(graph.nodes)
    for u, v in sorted(cs.equal_pairs):
        classes.union(u, v)
    rep: Dict[int, int] = {}
    members: Dict[int, List[int]] = {}
    for block in classes.to_sets():
        head = min(block)
        members[head] = sorted(block)
        for v in block:
            rep[v] = head
    adjacency: Dict[int, Set[int]] = {head: set() for head in members}
    for u, v in list(graph.edges) + sorted(cs.distinct_pairs):
        a, b = rep[u], rep[v]
        if a == b:
            return None
        adjacency[a].add(b)
        adjacency[b].add(a)
    fixed: Dict[int, int] = {}
    for v, color in cs.fixed.items():
        head = rep[v]
        if fixed.get(head, color) != color:
            return None
        fixed[head] = color
    return _Quotient(dict(sorted(members.items())), adjacency, fixed)


def _search(q: _Quotient, k: int) -> Optional[Dict[int, int]]:
    order = sorted(q.members)
    assigned: Dict[int, int] = {}
    symmetric = not q.fixed

    def domain(v: int) -> List[int]:
        taken = {assigned[w] for w in q.adjacency[v] if w in assigned}
        if v in q.fixed:
            color = q.fixed[v]
            return [] if color in taken or color > k else [color]
        limit = k
        if symmetric:
            limit = min(k, max(assigned.values(), default=0) + 1)
        return [c for c in range(1, limit + 1) if c not in taken]

    def pick() -> Tuple[int, List[int]]:
        best = None
        for v in order:
            if v in assigned:
                continue
            options = domain(v)
            key = (len(options), -len(q.adjacency[v]), v)
            if best is None or key < best[0]:
                best = (key, v, options)
        return best[1], best[2]

    def extend() -> bool:
        if len(assigned) == len(order):
            return True
        v, options = pick()
        for color in options:
            assigned[v] = color
            if all(domain(w) for w in q.adjacency[v] if w not in assigned) and extend():
                return True
            del assigned[v]
        return False

    if extend():
        return assigned
    return None


def solve_k(g: GraphLike, cs: Optional[ConstraintSet] = None, k: int = 3) -> Optional[Coloring]:
    """A proper k-coloring satisfying ``cs``, or None when none exists."""
    graph = as_nx(g)
    cs = cs or EMPTY
    cs.validate_for(graph.nodes)
    q = _quotient(graph, cs)
    if q is None:
        return None
    colors = _search(q, k)
    if colors is None:
        return None
    assignment = {v: colors[head] for head, block in q.members.items() for v in block}
    return Coloring(assignment=dict(sorted(assignment.items())))


def solve(g: GraphLike, cs: Optional[ConstraintSet] = None) -> Optional[Coloring]:
    return solve_k(g, cs, 3)


def _check_size(graph: nx.Graph) -> None:
    if graph.number_of_nodes() > settings.solver_max_vertices:
        raise TooLargeError(
            f"n={graph.number_of_nodes()} exceeds the solver cap of {settings.solver_max_vertices}"
        )


def chromatic_number(g: GraphLike) -> int:
    graph = as_nx(g)
    _check_size(graph)
    for k in range(0, graph.number_of_nodes() + 1):
        if solve_k(graph, EMPTY, k) is not None:
            return k
    return graph.number_of_nodes()


def is_k_critical(g: GraphLike, k: int) -> bool:
    """chi(G) = k and deleting any single vertex or edge makes G (k-1)-colorable."""
    graph = as_nx(g)
    _check_size(graph)
    if k < 1 or chromatic_number(graph) != k:
        return False
    for v in sorted(graph.nodes):
        smaller = graph.copy()
        smaller.remove_node(v)
        if solve_k(smaller, EMPTY, k - 1) is None:
            return False
    for u, v in sorted(graph.edges):
        smaller = graph.copy()
        smaller.remove_edge(u, v)
        if solve_k(smaller, EMPTY, k - 1) is None:
            return False
    return True


def verify_coloring(g: GraphLike, cs: Optional[ConstraintSet], coloring: Optional[Coloring]) -> bool:
    if coloring is None:
        return False
    graph = as_nx(g)
    cs = cs or EMPTY
    colors = coloring.assignment
    if set(colors) != set(graph.nodes):
        return False
    if any(c not in COLORS for c in colors.values()):
        return False
    if any(colors[u] == colors[v] for u, v in graph.edges):
        return False
    if any(colors.get(v) != c for v, c in cs.fixed.items()):
        return False
    if any(colors[u] != colors[v] for u, v in cs.equal_pairs):
        return False
    return all(colors[u] != colors[v] for u, v in cs.distinct_pairs)


def proper_cycle_colorings(length: int) -> List[Tuple[int, ...]]:
    """Every proper 3-coloring of a cycle of the given length, in lexicographic order."""
    return [
        colors
        for colors in product(COLORS, repeat=length)
        if all(colors[i] != colors[(i + 1) % length] for i in range(length))
    ]
