from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.errors import InvalidConstraintsError, InvalidSpecError

Pair = Tuple[int, int]
COLORS = (1, 2, 3)


def normalize_pair(u: int, v: int) -> Pair:
    return (u, v) if u <= v else (v, u)


class Face(BaseModel):
    """Facial walk given as consecutive darts (u, v)."""

    model_config = ConfigDict(frozen=True)

    boundary: Tuple[Tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.boundary)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(u for u, _ in self.boundary)

    def is_simple_cycle(self) -> bool:
        walk = self.vertices
        return len(walk) >= 3 and len(set(walk)) == len(walk)


class CycleSplit(BaseModel):
    model_config = ConfigDict(frozen=True)

    cycle: Tuple[int, ...]
    interior: FrozenSet[int]
    exterior: FrozenSet[int]

    @property
    def is_separating(self) -> bool:
        return bool(self.interior) and bool(self.exterior)

    def side(self, name: str) -> FrozenSet[int]:
        if name == "interior":
            return self.interior
        if name == "exterior":
            return self.exterior
        raise ValueError(f"unknown side {name!r}")


class Identification(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kept: int
    merged: int
    result: nx.Graph


class DhgoSpec(BaseModel):
    """Inputs of a DHGO composition: delete xy from g1, split z of g2, glue."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    g1: nx.Graph
    xy: Pair
    g2: nx.Graph
    z: int
    partition: Tuple[FrozenSet[int], FrozenSet[int]]

    @model_validator(mode="after")
    def _check(self) -> "DhgoSpec":
        x, y = self.xy
        if not self.g1.has_edge(x, y):
            raise InvalidSpecError(f"xy=({x},{y}) is not an edge of g1")
        if self.z not in self.g2:
            raise InvalidSpecError(f"z={self.z} is not a vertex of g2")
        first, second = self.partition
        if not first or not second:
            raise InvalidSpecError("both parts of the split must be non-empty")
        if first & second:
            raise InvalidSpecError("split parts overlap")
        if first | second != set(self.g2.neighbors(self.z)):
            raise InvalidSpecError(f"partition does not cover N({self.z}) exactly")
        return self


class K4PrimeOccurrence(BaseModel):
    model_config = ConfigDict(frozen=True)

    apex: int
    branch: Tuple[int, int, int]
    base: Tuple[int, int, int]


class ConstraintSet(BaseModel):
    """Precolored vertices plus forced-equal and forced-distinct pairs."""

    model_config = ConfigDict(frozen=True)

    fixed: Dict[int, int] = {}
    equal_pairs: FrozenSet[Pair] = frozenset()
    distinct_pairs: FrozenSet[Pair] = frozenset()

    @field_validator("fixed")
    @classmethod
    def _check_colors(cls, value: Dict[int, int]) -> Dict[int, int]:
        for vertex, color in value.items():
            if color not in COLORS:
                raise InvalidConstraintsError(f"vertex {vertex}: color {color} not in 1..3")
        return dict(sorted(value.items()))

    @field_validator("equal_pairs", "distinct_pairs")
    @classmethod
    def _normalize_pairs(cls, value: FrozenSet[Pair]) -> FrozenSet[Pair]:
        pairs = set()
        for u, v in value:
            if u == v:
                raise InvalidConstraintsError(f"pair ({u},{v}) names one vertex twice")
            pairs.add(normalize_pair(u, v))
        return frozenset(pairs)

    @model_validator(mode="after")
    def _check_consistency(self) -> "ConstraintSet":
        both = self.equal_pairs & self.distinct_pairs
        if both:
            raise InvalidConstraintsError(f"pairs both equal and distinct: {sorted(both)}")
        for u, v in self.equal_pairs:
            if u in self.fixed and v in self.fixed and self.fixed[u] != self.fixed[v]:
                raise InvalidConstraintsError(f"equal pair ({u},{v}) fixed to different colors")
        for u, v in self.distinct_pairs:
            if u in self.fixed and v in self.fixed and self.fixed[u] == self.fixed[v]:
                raise InvalidConstraintsError(f"distinct pair ({u},{v}) fixed to the same color")
        return self

    def vertices(self) -> FrozenSet[int]:
        """Every vertex mentioned by some constraint."""
        named = set(self.fixed)
        for pair in self.equal_pairs | self.distinct_pairs:
            named.update(pair)
        return frozenset(named)

    def is_empty(self) -> bool:
        return not (self.fixed or self.equal_pairs or self.distinct_pairs)

    def validate_for(self, vertices: Iterable[int]) -> None:
        known = set(vertices)
        missing = sorted(self.vertices() - known)
        if missing:
            raise InvalidConstraintsError(f"constraints name unknown vertices {missing}")

    def rename(self, mapping: Dict[int, int]) -> Optional["ConstraintSet"]:
        """Apply a vertex renaming; returns None when the renamed set is contradictory."""
        fixed: Dict[int, int] = {}
        for vertex, color in self.fixed.items():
            target = mapping.get(vertex, vertex)
            if fixed.get(target, color) != color:
                return None
            fixed[target] = color
        equal = set()
        for u, v in self.equal_pairs:
            a, b = mapping.get(u, u), mapping.get(v, v)
            if a != b:
                equal.add(normalize_pair(a, b))
        distinct = set()
        for u, v in self.distinct_pairs:
            a, b = mapping.get(u, u), mapping.get(v, v)
            if a == b:
                return None
            distinct.add(normalize_pair(a, b))
        if equal & distinct:
            return None
        try:
            return ConstraintSet(fixed=fixed, equal_pairs=frozenset(equal), distinct_pairs=frozenset(distinct))
        except InvalidConstraintsError:
            return None

    def describe(self) -> str:
        parts: List[str] = []
        parts.extend(f"fix {v}={c}" for v, c in self.fixed.items())
        parts.extend(f"equal {u},{v}" for u, v in sorted(self.equal_pairs))
        parts.extend(f"distinct {u},{v}" for u, v in sorted(self.distinct_pairs))
        return "; ".join(parts) if parts else "none"


class Coloring(BaseModel):
    model_config = ConfigDict(frozen=True)

    assignment: Dict[int, int]

    def __getitem__(self, vertex: int) -> int:
        return self.assignment[vertex]

    def to_lines(self) -> List[str]:
        return [f"{v} {c}" for v, c in sorted(self.assignment.items())]


class Lemma10Witness(BaseModel):
    """Triangle v_i v_{i+1} z with paths v_{i+1} z x v_{i+3} and v_i z y v_{i+2}."""

    model_config = ConfigDict(frozen=True)

    i: int
    z: int
    x: int
    y: int


class Lemma10Outcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    face: Tuple[int, int, int, int]
    safe_index: Optional[int] = None
    witness: Optional[Lemma10Witness] = None
    triangles_before: int
    triangles_after: Tuple[int, int]

    @property
    def is_safe(self) -> bool:
        return self.safe_index is not None


class Corollary4Kind(str, Enum):
    ADJACENT_TO_TRIANGLE = "AdjacentToTriangle"
    SAFE_PAIR = "SafePair"


class Corollary4Case(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Corollary4Kind
    safe_index: Optional[int] = None
    triangle: Optional[Tuple[int, int, int]] = None


class StepKind(str, Enum):
    IDENTIFY_DIAGONAL = "IdentifyDiagonal"
    SPLIT_AT_CYCLE = "SplitAtCycle"
    EXTEND_FACE = "ExtendFace"
    CONTRACT_NEIGHBORHOOD = "ContractNeighborhood"
    SOLVER_FALLBACK = "SolverFallback"


class TraceStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: StepKind
    args: str
    n_before: int
    m_before: int
    n_after: int
    m_after: int

    def to_line(self) -> str:
        return (
            f"STEP {self.kind.value} {self.args} "
            f"{self.n_before} {self.m_before} {self.n_after} {self.m_after}"
        )

    @classmethod
    def from_line(cls, line: str) -> "TraceStep":
        fields = line.split()
        if len(fields) != 7 or fields[0] != "STEP":
            raise ValueError(f"malformed trace line: {line!r}")
        return cls(
            kind=StepKind(fields[1]),
            args=fields[2],
            n_before=int(fields[3]),
            m_before=int(fields[4]),
            n_after=int(fields[5]),
            m_after=int(fields[6]),
        )


class ReductionTrace(BaseModel):
    steps: List[TraceStep] = []

    def to_lines(self) -> List[str]:
        return [step.to_line() for step in self.steps]

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "ReductionTrace":
        return cls(steps=[TraceStep.from_line(line) for line in lines if line.strip()])

    def kinds(self) -> List[StepKind]:
        return [step.kind for step in self.steps]


class ReductionResult(BaseModel):
    coloring: Optional[Coloring] = None
    trace: ReductionTrace

    @property
    def satisfiable(self) -> bool:
        return self.coloring is not None


class AdynamicColoring(BaseModel):
    model_config = ConfigDict(frozen=True)

    coloring: Coloring
    witness_vertex: int
