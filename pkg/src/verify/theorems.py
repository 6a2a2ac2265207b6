"""Theorem harness: run the engine and the exact solver on every instance a statement covers.

A failure is recorded when the two disagree, when the statement's hypotheses
hold but the instance is uncolorable, or when the engine raises.
"""

import time
from itertools import combinations, product
from typing import Iterable, Iterator, List, Optional, Tuple

from joblib import Parallel, delayed
from loguru import logger
from tqdm import tqdm

from config.settings import settings
from src.catalog.enumerate import enumerate_small_planar
from src.coloring.colorer import is_k_critical, proper_cycle_colorings, solve, verify_coloring
from src.errors import PlanarToolkitError, TooLargeError
from src.graph.plane_graph import GraphLike, PlaneGraph, embed_graph, triangle_count, triangles
from src.graph.surgery import (
    add_vertex,
    common_neighbor_triples,
    identify,
    independent_neighborhood,
    is_k4prime_free,
    non_adjacent_pairs,
)
from src.models.graph import COLORS, Coloring, ConstraintSet
from src.models.report import CorpusFilter, Failure, Report, TheoremId
from src.reductions.engine import reduce_and_color
from src.reductions.lemma10 import diagonal, lemma10_analyze
from src.verify.adynamic import adynamic_3color, adynamic_candidates, is_adynamic
from src.verify.bounds import check_ky_bound, check_pl44f, ky_sides

def _failure(t: TheoremId, g: PlaneGraph, cs: ConstraintSet, engine, oracle, detail: str,
             added: Tuple[int, ...] = ()) -> Failure:
    failure = Failure(theorem=t, rotation=g.rotation, constraints=cs, added=added,
                      engine_verdict=engine, oracle_verdict=oracle, detail=detail)
    logger.error(failure.to_line())
    return failure


def _run_instance(t: TheoremId, g: PlaneGraph, cs: ConstraintSet, expect: bool = True) -> Optional[Failure]:
    try:
        engine = reduce_and_color(g, cs).coloring is not None
    except PlanarToolkitError as exc:
        return _failure(t, g, cs, None, None, f"engine raised {type(exc).__name__}: {exc}")
    oracle = solve(g, cs) is not None
    if engine != oracle:
        return _failure(t, g, cs, engine, oracle, "engine and oracle disagree")
    if expect and not oracle:
        return _failure(t, g, cs, engine, oracle, "hypotheses hold but no extension exists")
    return None


# Instance generators, one per statement

def pair_instances(g: PlaneGraph) -> Iterator[ConstraintSet]:
    for u, v in non_adjacent_pairs(g):
        for cu, cv in product(COLORS, repeat=2):
            yield ConstraintSet(fixed={u: cu, v: cv})


def small_face_instances(g: PlaneGraph) -> Iterator[ConstraintSet]:
    for face in g.faces:
        if face.length > 4 or not face.is_simple_cycle():
            continue
        for colors in proper_cycle_colorings(face.length):
            yield ConstraintSet(fixed=dict(zip(face.vertices, colors)))


def mono_neighborhood_instances(g: PlaneGraph) -> Iterator[ConstraintSet]:
    for u in g.vertices:
        if not 1 <= g.degree(u) <= 3 or not independent_neighborhood(g, u):
            continue
        for color in COLORS:
            yield ConstraintSet(fixed={w: color for w in g.neighbors(u)})


def three_common_instances(g: PlaneGraph) -> Iterator[ConstraintSet]:
    for a, b, c in common_neighbor_triples(g):
        yield ConstraintSet(equal_pairs=frozenset({(a, b), (b, c)}))


def attachment_sets(g: PlaneGraph, size: int) -> Iterator[Tuple[int, ...]]:
    """Vertex sets of at most ``size`` vertices that never contain a whole triangle."""
    found = [set(t) for t in triangles(g)]
    for k in range(1, size + 1):
        for subset in combinations(g.vertices, k):
            if not any(t <= set(subset) for t in found):
                yield subset


# Checks

def _check_constraint_family(t: TheoremId, g: PlaneGraph, instances: Iterable[ConstraintSet],
                             report: Report) -> None:
    for cs in instances:
        report.instances_checked += 1
        failure = _run_instance(t, g, cs)
        if failure:
            report.failures.append(failure)


def _check_added_vertex(g: PlaneGraph, report: Report) -> None:
    t = TheoremId.T8_ADD3VERTEX
    for attach in attachment_sets(g, 3):
        report.instances_checked += 1
        host, new = add_vertex(g, attach)
        pair = next(((a, b) for a, b in combinations(attach, 2) if not g.has_edge(a, b)), None)
        cs = ConstraintSet(equal_pairs=frozenset({pair})) if pair else ConstraintSet()
        try:
            base = reduce_and_color(g, cs).coloring
        except PlanarToolkitError as exc:
            report.failures.append(_failure(t, g, cs, None, None, f"engine raised {exc}", attach))
            continue
        lifted = None
        if base is not None:
            seen = {base[a] for a in attach}
            free = [c for c in COLORS if c not in seen]
            if free:
                lifted = Coloring(assignment={**base.assignment, new: free[0]})
        direct = solve(host) is not None
        if lifted is None or not verify_coloring(host, None, lifted) or not direct:
            report.failures.append(
                _failure(t, g, cs, lifted is not None, direct, "added vertex not colorable", attach)
            )


def _check_adynamic(g: PlaneGraph, report: Report) -> None:
    t = TheoremId.T13_ADYNAMIC
    report.instances_checked += 1
    result = adynamic_3color(g)
    oracle = any(
        solve(g, ConstraintSet(equal_pairs=frozenset(zip(ns, ns[1:])))) is not None
        for ns in (sorted(g.neighbors(v)) for v in adynamic_candidates(g))
    )
    if result is not None and not is_adynamic(g, result):
        report.failures.append(_failure(t, g, ConstraintSet(), True, oracle, "returned coloring is not adynamic"))
    elif (result is not None) != oracle or not oracle:
        report.failures.append(_failure(t, g, ConstraintSet(), result is not None, oracle, "no adynamic coloring"))


def _check_lemma10(g: PlaneGraph, report: Report) -> None:
    t = TheoremId.L10_WITNESS
    for face in g.faces:
        if face.length != 4 or not face.is_simple_cycle():
            continue
        quad = face.vertices
        if g.has_edge(quad[0], quad[2]) or g.has_edge(quad[1], quad[3]):
            continue
        report.instances_checked += 1
        before = triangle_count(g)
        after = [triangle_count(identify(g, *diagonal(quad, i))) for i in (1, 2)]
        try:
            outcome = lemma10_analyze(g, quad)
        except PlanarToolkitError as exc:
            report.failures.append(_failure(t, g, ConstraintSet(), None, None, f"face {quad}: {exc}"))
            continue
        brute_safe = any(a <= before for a in after)
        problem = None
        if outcome.is_safe != brute_safe or list(outcome.triangles_after) != after:
            problem = f"face {quad}: verdict safe={outcome.is_safe}, census {before}->{after}"
        elif outcome.witness is not None:
            w = outcome.witness
            a, b, c, d = (quad[(w.i - 1 + j) % 4] for j in range(4))
            needed = [(a, b), (a, w.z), (b, w.z), (w.z, w.x), (w.x, d), (w.z, w.y), (w.y, c)]
            outside = not {w.x, w.y, w.z} & set(quad)
            if not outside or not all(g.has_edge(p, q) for p, q in needed):
                problem = f"face {quad}: witness {w} is not present"
        if problem:
            report.failures.append(_failure(t, g, ConstraintSet(), None, None, problem))


def _check_critical(g: PlaneGraph, report: Report) -> None:
    if not is_k_critical(g, 4):
        return
    report.instances_checked += 1
    holds, _ = check_ky_bound(g)
    if not holds:
        lhs, rhs = ky_sides(g)
        report.failures.append(_failure(TheoremId.KY_BOUND, g, ConstraintSet(), None, None,
                                        f"3m={lhs} < 5n-2={rhs}"))


def _check_pl44f(g: PlaneGraph, report: Report) -> None:
    lhs, rhs = ky_sides(g)
    if lhs != rhs or not is_k_critical(g, 4):
        return
    report.instances_checked += 1
    count = triangle_count(g)
    if count < 4 or not check_pl44f(g):
        report.failures.append(_failure(TheoremId.T15_PL44F, g, ConstraintSet(), None, None,
                                        f"4-Ore graph with {count} triangles"))


def check_theorem(g: GraphLike, t: TheoremId) -> Report:
    """Check every instance of statement ``t`` on one graph; instances outside the hypotheses are skipped."""
    plane = g if isinstance(g, PlaneGraph) else embed_graph(g)
    if plane.n > settings.theorem_max_vertices:
        raise TooLargeError(f"n={plane.n} exceeds the theorem cap of {settings.theorem_max_vertices}")
    start = time.perf_counter()
    report = Report(theorem=t)
    count = triangle_count(plane)
    if t == TheoremId.T6_PAIR and count <= 1:
        _check_constraint_family(t, plane, pair_instances(plane), report)
    elif t == TheoremId.T8_ADD3VERTEX and count <= 1:
        _check_added_vertex(plane, report)
    elif t == TheoremId.T9_SMALL_FACE and count <= 1:
        _check_constraint_family(t, plane, small_face_instances(plane), report)
    elif t == TheoremId.T11_MONO_NEIGHBORHOOD and count <= 1 and is_k4prime_free(plane):
        _check_constraint_family(t, plane, mono_neighborhood_instances(plane), report)
    elif t == TheoremId.T13_ADYNAMIC and count <= 1 and adynamic_candidates(plane):
        _check_adynamic(plane, report)
    elif t == TheoremId.C1_THREE_COMMON and count == 0:
        _check_constraint_family(t, plane, three_common_instances(plane), report)
    elif t == TheoremId.L10_WITNESS:
        _check_lemma10(plane, report)
    elif t == TheoremId.KY_BOUND:
        _check_critical(plane, report)
    elif t == TheoremId.T15_PL44F:
        _check_pl44f(plane, report)
    report.runtime = time.perf_counter() - start
    return report


def merge_reports(t: TheoremId, reports: Iterable[Report]) -> Report:
    total = Report(theorem=t)
    for report in reports:
        total = total.merge(report)
    return total


def scan_graphs(graphs: List[PlaneGraph], t: TheoremId, jobs: Optional[int] = None,
                progress: bool = False) -> Report:
    """check_theorem over a list of graphs on a worker pool; the merge keeps input order."""
    jobs = jobs or settings.worker_count()
    start = time.perf_counter()
    items = tqdm(graphs, disable=not progress, desc=t.value)
    if jobs == 1:
        reports = [check_theorem(g, t) for g in items]
    else:
        reports = Parallel(n_jobs=jobs)(delayed(check_theorem)(g, t) for g in items)
    total = merge_reports(t, reports)
    total.runtime = time.perf_counter() - start
    logger.info(f"{t.value}: {len(graphs)} graphs, {total.instances_checked} instances, "
                f"{len(total.failures)} failures in {total.runtime:.1f}s")
    return total


def scan_corpus(filt: CorpusFilter, t: TheoremId, jobs: Optional[int] = None,
                progress: bool = False) -> Report:
    graphs = list(enumerate_small_planar(filt, progress=progress))
    logger.info(f"corpus {filt.describe()}: {len(graphs)} graphs")
    return scan_graphs(graphs, t, jobs=jobs, progress=progress)


def replay_failure(failure: Failure) -> Report:
    """Re-run the statement on the graph a failure was recorded for."""
    return check_theorem(PlaneGraph(rotation=failure.rotation), failure.theorem)

