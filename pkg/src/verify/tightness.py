"""Search for minimal instances showing a hypothesis cannot be relaxed.

Each pattern drops one hypothesis of a coloring statement (one more triangle,
one more precolored vertex, a longer face, a higher degree) and asks the exact
solver for instances that become uncolorable. The search walks the corpus by
increasing n and stops at the first n with a witness.
"""

from itertools import combinations, groupby, product
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from joblib import Parallel, delayed
from loguru import logger
from pydantic import BaseModel, ConfigDict

from config.settings import settings
from src.catalog.enumerate import enumerate_small_planar
from src.coloring.colorer import proper_cycle_colorings, solve
from src.errors import CapExceededError
from src.graph.plane_graph import PlaneGraph, triangle_count, triangles
from src.graph.surgery import add_vertex, independent_neighborhood, is_k4prime_free, non_adjacent_pairs
from src.models.graph import COLORS, ConstraintSet
from src.models.report import CorpusFilter, Witness

Instance = Tuple[ConstraintSet, Tuple[int, ...]]


def restricted_growth(colors: Tuple[int, ...]) -> bool:
    """Whether colors appear in first-use order 1, 2, 3; one representative per color permutation."""
    seen = 0
    for c in colors:
        if c > seen + 1:
            return False
        seen = max(seen, c)
    return True


def _chain(vertices) -> ConstraintSet:
    ordered = sorted(vertices)
    return ConstraintSet(equal_pairs=frozenset(zip(ordered, ordered[1:])))


def _precolorings(size: int) -> List[Tuple[int, ...]]:
    return [colors for colors in product(COLORS, repeat=size) if restricted_growth(colors)]


def _pair_instances(g: PlaneGraph) -> Iterator[Instance]:
    for u, v in non_adjacent_pairs(g):
        for cu, cv in _precolorings(2):
            yield ConstraintSet(fixed={u: cu, v: cv}), ()


def _triple_instances(g: PlaneGraph) -> Iterator[Instance]:
    for trio in combinations(g.vertices, 3):
        if any(g.has_edge(a, b) for a, b in combinations(trio, 2)):
            continue
        for colors in _precolorings(3):
            yield ConstraintSet(fixed=dict(zip(trio, colors))), ()


def _five_face_instances(g: PlaneGraph) -> Iterator[Instance]:
    for face in g.faces:
        if face.length != 5 or not face.is_simple_cycle():
            continue
        for colors in proper_cycle_colorings(5):
            if restricted_growth(colors):
                yield ConstraintSet(fixed=dict(zip(face.vertices, colors))), ()


def _mono_instances(degree: int) -> Callable[[PlaneGraph], Iterator[Instance]]:
    def instances(g: PlaneGraph) -> Iterator[Instance]:
        for v in g.vertices:
            if g.degree(v) == degree and independent_neighborhood(g, v):
                yield _chain(g.neighbors(v)), ()
    return instances


def _added_vertex_instances(sizes: Tuple[int, ...]) -> Callable[[PlaneGraph], Iterator[Instance]]:
    def instances(g: PlaneGraph) -> Iterator[Instance]:
        found = [set(t) for t in triangles(g)]
        for size in sizes:
            for attach in combinations(g.vertices, size):
                if any(t <= set(attach) for t in found):
                    continue
                yield ConstraintSet(), attach
    return instances


class Pattern(BaseModel):
    model_config = ConfigDict(frozen=True)

    triangles: int
    instances: Callable[[PlaneGraph], Iterator[Instance]]
    k4prime_free: bool = False


PATTERNS: Dict[str, Pattern] = {
    "three-precolored-vertices-one-triangle": Pattern(triangles=1, instances=_triple_instances),
    "pair-two-triangles": Pattern(triangles=2, instances=_pair_instances),
    "added-4-vertex-one-triangle": Pattern(triangles=1, instances=_added_vertex_instances((4,))),
    "added-3-vertex-two-triangles": Pattern(triangles=2, instances=_added_vertex_instances((1, 2, 3))),
    "fiveface-one-triangle": Pattern(triangles=1, instances=_five_face_instances),
    "mono-4-neighborhood-K4'-free-one-triangle": Pattern(triangles=1, instances=_mono_instances(4), k4prime_free=True),
    "mono-2-neighborhood-two-triangles": Pattern(triangles=2, instances=_mono_instances(2)),
    # control: every instance extends, so the search must come back empty
    "pair-one-triangle": Pattern(triangles=1, instances=_pair_instances),
}


def instance_uncolorable(g: PlaneGraph, cs: ConstraintSet, added: Tuple[int, ...]) -> bool:
    """Whether g under cs, or the host g + vertex joined to ``added``, has no 3-coloring.

    The host may be non-planar; the added-vertex statements only ask g to be planar.
    """
    if not added:
        return solve(g, cs) is None
    host, _ = add_vertex(g, added)
    return solve(host, cs) is None


def _witnesses_in(pattern_id: str, g: PlaneGraph) -> List[Witness]:
    pattern = PATTERNS[pattern_id]
    if triangle_count(g) != pattern.triangles:
        return []
    if pattern.k4prime_free and not is_k4prime_free(g):
        return []
    found = []
    for cs, added in pattern.instances(g):
        if instance_uncolorable(g, cs, added):
            found.append(Witness(pattern=pattern_id, rotation=g.rotation, constraints=cs,
                                 added=added, triangles=pattern.triangles))
    return found


def search_tightness(pattern_id: str, max_n: int, jobs: Optional[int] = None) -> List[Witness]:
    """All witnesses on the smallest n <= max_n that has any; empty when none exist under the cap."""
    if pattern_id not in PATTERNS:
        raise ValueError(f"unknown pattern {pattern_id!r}; known: {sorted(PATTERNS)}")
    if max_n > settings.corpus_max_vertices:
        raise CapExceededError(f"max_n={max_n} exceeds the corpus cap of {settings.corpus_max_vertices}")
    jobs = jobs or settings.worker_count()
    filt = CorpusFilter(max_n=max_n, max_triangles=PATTERNS[pattern_id].triangles)
    for n, group in groupby(enumerate_small_planar(filt), key=lambda g: g.n):
        graphs = list(group)
        if jobs == 1:
            batches = [_witnesses_in(pattern_id, g) for g in graphs]
        else:
            batches = Parallel(n_jobs=jobs)(delayed(_witnesses_in)(pattern_id, g) for g in graphs)
        witnesses = [w for batch in batches for w in batch]
        logger.info(f"{pattern_id}: n={n}, {len(graphs)} graphs, {len(witnesses)} witnesses")
        if witnesses:
            return witnesses
    logger.warning(f"{pattern_id}: no witness with n <= {max_n}")
    return []
