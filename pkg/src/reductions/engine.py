"""Reduction engine: color a plane graph with at most one triangle under constraints.

The engine applies, in order, the first constructive step that fits:

1. identify a safe 4-face diagonal (lowest face in ``faces()`` order),
2. split at a separating cycle of length at most 5 whose dropped side is
   unconstrained and small enough for a guaranteed face extension,
3. contract the closed neighborhood of a degree-3 vertex whose independent
   neighborhood is forced monochromatic,
4. solve exactly.

Every step shrinks the graph and recurses. If a reduced instance turns out
uncolorable, the steps taken from that level are discarded and the level is
solved exactly, so the verdict always matches ``solve``.
"""

from typing import Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger
from networkx.utils import UnionFind

from src.coloring.colorer import solve, verify_coloring
from src.errors import EngineError, FaceTooLongError, ImproperPartialError
from src.graph.plane_graph import (
    GraphLike,
    PlaneGraph,
    as_nx,
    embed_graph,
    induced_plane_subgraph,
    is_facial,
    short_cycles,
    split_by_cycle,
    triangle_count,
    validate_cycle,
)
from src.graph.surgery import add_edge, contract_closed_neighborhood, identify, independent_neighborhood
from src.models.graph import (
    COLORS,
    Coloring,
    ConstraintSet,
    Face,
    ReductionResult,
    ReductionTrace,
    StepKind,
    TraceStep,
)
from src.reductions.lemma10 import diagonal, lemma10_analyze, safe_indices

Colors = Dict[int, int]
MAX_SPLIT_CYCLE = 5


def extend_small_face(
    g: GraphLike,
    face: Union[Face, Sequence[int]],
    partial: Union[Coloring, Dict[int, int]],
) -> Optional[Coloring]:
    """Extend a proper coloring of a facial cycle of length at most 5 to all of g."""
    vertices = face.vertices if isinstance(face, Face) else tuple(face)
    cycle = validate_cycle(g, vertices)
    if len(cycle) > 5:
        raise FaceTooLongError(f"face of length {len(cycle)} exceeds 5")
    colors = dict(partial.assignment if isinstance(partial, Coloring) else partial)
    if set(colors) != set(cycle):
        raise ImproperPartialError(f"partial coloring must cover exactly the face {list(cycle)}")
    for i, v in enumerate(cycle):
        w = cycle[(i + 1) % len(cycle)]
        if colors[v] not in COLORS:
            raise ImproperPartialError(f"vertex {v}: color {colors[v]} not in 1..3")
        if colors[v] == colors[w]:
            raise ImproperPartialError(f"adjacent face vertices {v} and {w} share color {colors[v]}")
    result = solve(g, ConstraintSet(fixed=colors))
    if result is None and extension_guaranteed(g, cycle):
        logger.warning(f"precoloring {colors} of face {list(cycle)} did not extend")
    return result


def extension_guaranteed(g: GraphLike, cycle: Sequence[int]) -> bool:
    """Facial cycle with (no triangle and length <= 5) or (one triangle and length <= 4)."""
    if isinstance(g, PlaneGraph) and not is_facial(g, cycle):
        return False
    count = triangle_count(g)
    return (count == 0 and len(cycle) <= 5) or (count <= 1 and len(cycle) <= 4)


def _sizes(g: GraphLike) -> Tuple[int, int]:
    graph = as_nx(g)
    return graph.number_of_nodes(), graph.number_of_edges()


def _step(kind: StepKind, args: str, before: GraphLike, after: Tuple[int, int]) -> TraceStep:
    n_before, m_before = _sizes(before)
    return TraceStep(
        kind=kind, args=args, n_before=n_before, m_before=m_before, n_after=after[0], m_after=after[1]
    )


def _forced_monochromatic(cs: ConstraintSet, vertices: Sequence[int]) -> bool:
    classes = UnionFind(cs.vertices() | set(vertices))
    for u, v in cs.equal_pairs:
        classes.union(u, v)
    roots = {classes[v] for v in vertices}
    if len(roots) == 1:
        return True
    class_color: Dict[int, int] = {}
    for v, color in cs.fixed.items():
        class_color[classes[v]] = color
    colors = {class_color.get(root) for root in roots}
    return len(colors) == 1 and None not in colors


class _Plan:
    def __init__(self, kind: StepKind, **params):
        self.kind = kind
        self.params = params


class ReductionEngine:
    """Runs the reduction steps; with ``replay`` it follows a recorded trace instead of choosing."""

    def __init__(self, replay: Optional[ReductionTrace] = None):
        self._replay = list(replay.steps) if replay is not None else None

    # Step selection

    def _choose(self, g: PlaneGraph, cs: ConstraintSet) -> _Plan:
        if self._replay is not None:
            return self._plan_from_trace(g)
        return (
            self._find_identification(g, cs)
            or self._find_split(g, cs)
            or self._find_contraction(g, cs)
            or _Plan(StepKind.SOLVER_FALLBACK)
        )

    def _find_identification(self, g: PlaneGraph, cs: ConstraintSet) -> Optional[_Plan]:
        if triangle_count(g) > 1:
            return None
        for face in g.faces:
            if face.length != 4 or not face.is_simple_cycle():
                continue
            quad = face.vertices
            if g.has_edge(quad[0], quad[2]) or g.has_edge(quad[1], quad[3]):
                continue
            outcome = lemma10_analyze(g, quad)
            for index in safe_indices(outcome):
                u, v = diagonal(quad, index)
                kept, merged = min(u, v), max(u, v)
                renamed = cs.rename({merged: kept})
                if renamed is not None:
                    return _Plan(StepKind.IDENTIFY_DIAGONAL, kept=kept, merged=merged, cs=renamed)
        return None

    def _find_split(self, g: PlaneGraph, cs: ConstraintSet) -> Optional[_Plan]:
        constrained = cs.vertices()
        for cycle in short_cycles(g, MAX_SPLIT_CYCLE):
            split = split_by_cycle(g, cycle)
            if not split.is_separating:
                continue
            for side in ("interior", "exterior"):
                dropped = split.side(side)
                if dropped & constrained:
                    continue
                outer = induced_plane_subgraph(g, dropped | set(cycle))
                if extension_guaranteed(outer, cycle):
                    return _Plan(StepKind.SPLIT_AT_CYCLE, cycle=cycle, side=side)
        return None

    def _find_contraction(self, g: PlaneGraph, cs: ConstraintSet) -> Optional[_Plan]:
        constrained = cs.vertices()
        for u in g.vertices:
            if g.degree(u) != 3 or u in constrained or not independent_neighborhood(g, u):
                continue
            neighbors = sorted(g.neighbors(u))
            if not _forced_monochromatic(cs, neighbors):
                continue
            renamed = cs.rename({w: u for w in neighbors})
            if renamed is not None:
                return _Plan(StepKind.CONTRACT_NEIGHBORHOOD, u=u, cs=renamed)
        return None

    def _plan_from_trace(self, g: PlaneGraph) -> _Plan:
        if not self._replay:
            raise EngineError("trace exhausted before the reduction finished")
        step = self._replay.pop(0)
        if (step.n_before, step.m_before) != (g.n, g.m):
            raise EngineError(f"trace step {step.to_line()!r} does not match graph n={g.n} m={g.m}")
        if step.kind == StepKind.IDENTIFY_DIAGONAL:
            kept, merged = (int(x) for x in step.args.split(","))
            return _Plan(step.kind, kept=kept, merged=merged, cs=None)
        if step.kind == StepKind.SPLIT_AT_CYCLE:
            cycle, side = step.args.split("/")
            return _Plan(step.kind, cycle=tuple(int(x) for x in cycle.split(",")), side=side)
        if step.kind == StepKind.CONTRACT_NEIGHBORHOOD:
            return _Plan(step.kind, u=int(step.args), cs=None)
        if step.kind == StepKind.SOLVER_FALLBACK:
            return _Plan(step.kind)
        raise EngineError(f"unexpected trace step {step.to_line()!r}")

    # Step execution

    def reduce(self, g: PlaneGraph, cs: ConstraintSet) -> Tuple[Optional[Colors], List[TraceStep]]:
        plan = self._choose(g, cs)
        if plan.kind == StepKind.SOLVER_FALLBACK:
            return self._fallback(g, cs)
        if plan.kind == StepKind.IDENTIFY_DIAGONAL:
            colors, steps = self._identify(g, cs, plan)
        elif plan.kind == StepKind.SPLIT_AT_CYCLE:
            colors, steps = self._split(g, cs, plan)
        else:
            colors, steps = self._contract(g, cs, plan)
        if colors is None:
            if self._replay is not None:
                raise EngineError(f"replayed {plan.kind.value} step failed")
            logger.debug(f"{plan.kind.value} on n={g.n} failed; solving this level exactly")
            return self._fallback(g, cs)
        return colors, steps

    def _fallback(self, g: PlaneGraph, cs: ConstraintSet) -> Tuple[Optional[Colors], List[TraceStep]]:
        coloring = solve(g, cs)
        step = _step(StepKind.SOLVER_FALLBACK, "-", g, (g.n, g.m))
        return (dict(coloring.assignment) if coloring else None), [step]

    def _identify(self, g: PlaneGraph, cs: ConstraintSet, plan: _Plan):
        kept, merged = plan.params["kept"], plan.params["merged"]
        renamed = plan.params["cs"]
        if renamed is None:
            renamed = cs.rename({merged: kept})
        if renamed is None:
            return None, []
        reduced = embed_graph(identify(g, kept, merged))
        logger.debug(f"identify {kept},{merged}: n {g.n} -> {reduced.n}")
        step = _step(StepKind.IDENTIFY_DIAGONAL, f"{kept},{merged}", g, (reduced.n, reduced.m))
        colors, steps = self.reduce(reduced, renamed)
        if colors is None:
            return None, []
        colors[merged] = colors[kept]
        return colors, [step] + steps

    def _split(self, g: PlaneGraph, cs: ConstraintSet, plan: _Plan):
        cycle, side = plan.params["cycle"], plan.params["side"]
        split = split_by_cycle(g, cycle)
        dropped = split.side(side)
        kept = induced_plane_subgraph(g, set(g.vertices) - dropped)
        outer = induced_plane_subgraph(g, dropped | set(cycle))
        args = ",".join(str(v) for v in cycle)
        logger.debug(f"split at cycle {args}, dropping {side} of size {len(dropped)}")
        split_step = _step(StepKind.SPLIT_AT_CYCLE, f"{args}/{side}", g, (kept.n, kept.m))
        colors, steps = self.reduce(kept, cs)
        if colors is None:
            return None, []
        if self._replay is not None:
            extend = self._replay.pop(0) if self._replay else None
            if extend is None or extend.kind != StepKind.EXTEND_FACE:
                raise EngineError("split step not followed by a face extension in trace")
        on_cycle = sum(1 for a, b in outer.edges if a in cycle and b in cycle)
        extend_step = _step(StepKind.EXTEND_FACE, args, outer, (len(cycle), on_cycle))
        extended = extend_small_face(outer, cycle, {v: colors[v] for v in cycle})
        if extended is None:
            return None, []
        colors.update(extended.assignment)
        return colors, [split_step] + steps + [extend_step]

    def _contract(self, g: PlaneGraph, cs: ConstraintSet, plan: _Plan):
        u = plan.params["u"]
        neighbors = sorted(g.neighbors(u))
        renamed = plan.params["cs"]
        if renamed is None:
            renamed = cs.rename({w: u for w in neighbors})
        if renamed is None:
            return None, []
        contracted, w = contract_closed_neighborhood(g, u)
        reduced = embed_graph(contracted)
        step = _step(StepKind.CONTRACT_NEIGHBORHOOD, str(u), g, (reduced.n, reduced.m))
        colors, steps = self.reduce(reduced, renamed)
        if colors is None:
            return None, []
        shared = colors[w]
        for v in neighbors:
            colors[v] = shared
        colors[u] = min(c for c in COLORS if c != shared)
        return colors, [step] + steps


def _prepare(g: GraphLike, cs: Optional[ConstraintSet]) -> Tuple[PlaneGraph, ConstraintSet]:
    plane = g if isinstance(g, PlaneGraph) else embed_graph(g)
    cs = cs or ConstraintSet()
    cs.validate_for(plane.vertices)
    return plane, cs


def reduce_and_color(g: GraphLike, cs: Optional[ConstraintSet] = None) -> ReductionResult:
    """Color g under cs via reduction steps; the coloring is None exactly when solve finds none."""
    plane, cs = _prepare(g, cs)
    colors, steps = ReductionEngine().reduce(plane, cs)
    coloring = Coloring(assignment=dict(sorted(colors.items()))) if colors is not None else None
    if coloring is not None and not verify_coloring(plane, cs, coloring):
        raise EngineError(f"engine produced an invalid coloring for n={plane.n} m={plane.m}")
    logger.debug(f"reduced n={plane.n} in {len(steps)} steps: {[s.kind.value for s in steps]}")
    return ReductionResult(coloring=coloring, trace=ReductionTrace(steps=steps))


def replay_trace(g: GraphLike, cs: Optional[ConstraintSet], trace: ReductionTrace) -> Optional[Coloring]:
    """Re-execute a recorded trace and return the coloring it produces."""
    plane, cs = _prepare(g, cs)
    engine = ReductionEngine(replay=trace)
    colors, _ = engine.reduce(plane, cs)
    if engine._replay:
        raise EngineError(f"{len(engine._replay)} trace steps left unused")
    if colors is None:
        return None
    coloring = Coloring(assignment=dict(sorted(colors.items())))
    if not verify_coloring(plane, cs, coloring):
        raise EngineError("replayed trace produced an invalid coloring")
    return coloring


def bridge_equal(g: GraphLike, u: int, v: int) -> Tuple[bool, bool]:
    """(colorable with u, v forced equal; colorable after identifying u and v)."""
    constrained = solve(g, ConstraintSet(equal_pairs=frozenset({(u, v)}))) is not None
    return constrained, solve(identify(g, u, v)) is not None


def bridge_distinct(g: GraphLike, u: int, v: int) -> Tuple[bool, bool]:
    """(colorable with u, v forced distinct; colorable after adding the edge uv)."""
    constrained = solve(g, ConstraintSet(distinct_pairs=frozenset({(u, v)}))) is not None
    return constrained, solve(add_edge(g, u, v)) is not None
