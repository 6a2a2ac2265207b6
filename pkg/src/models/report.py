from enum import Enum
from typing import Dict, List, Optional, Tuple

import orjson
from pydantic import BaseModel, ConfigDict, Field

from src.models.graph import ConstraintSet


class TheoremId(str, Enum):
    T6_PAIR = "T6_pair"
    T8_ADD3VERTEX = "T8_add3vertex"
    T9_SMALL_FACE = "T9_small_face"
    T11_MONO_NEIGHBORHOOD = "T11_mono_neighborhood"
    T13_ADYNAMIC = "T13_adynamic"
    C1_THREE_COMMON = "C1_three_common"
    L10_WITNESS = "L10_witness"
    KY_BOUND = "KY_bound"
    T15_PL44F = "T15_pl44f"


class CorpusTag(str, Enum):
    HAS_4_FACE = "has-4-face"
    K4PRIME_FREE = "K4'-free"
    HAS_INDEPENDENT_2PLUS = "has-2+-vertex-with-independent-neighborhood"


class CorpusFilter(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_n: int
    min_n: int = 1
    max_triangles: Optional[int] = None
    tags: Tuple[CorpusTag, ...] = ()

    def describe(self) -> str:
        triangles = "any" if self.max_triangles is None else str(self.max_triangles)
        tags = ",".join(tag.value for tag in self.tags) or "-"
        return f"n={self.min_n}..{self.max_n} triangles<={triangles} tags={tags}"


class Failure(BaseModel):
    """One disagreement, carrying everything needed to re-run it."""

    model_config = ConfigDict(frozen=True)

    theorem: TheoremId
    rotation: Dict[int, Tuple[int, ...]]
    constraints: ConstraintSet = ConstraintSet()
    added: Tuple[int, ...] = ()
    engine_verdict: Optional[bool] = None
    oracle_verdict: Optional[bool] = None
    detail: str = ""

    def to_line(self) -> str:
        edges = sorted((v, w) for v, order in self.rotation.items() for w in order if v < w)
        edge_text = " ".join(f"{v}-{w}" for v, w in edges)
        added = ",".join(str(v) for v in self.added) or "-"
        return (
            f"FAIL {self.theorem.value} engine={self.engine_verdict} oracle={self.oracle_verdict} "
            f"added={added} constraints=[{self.constraints.describe()}] edges=[{edge_text}] {self.detail}"
        ).rstrip()


class Report(BaseModel):
    theorem: TheoremId
    instances_checked: int = 0
    failures: List[Failure] = []
    runtime: float = Field(default=0.0, exclude=True)

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: "Report") -> "Report":
        if other.theorem != self.theorem:
            raise ValueError(f"cannot merge {other.theorem.value} into {self.theorem.value}")
        return Report(
            theorem=self.theorem,
            instances_checked=self.instances_checked + other.instances_checked,
            failures=self.failures + other.failures,
            runtime=self.runtime + other.runtime,
        )

    def to_lines(self) -> List[str]:
        lines = [
            f"theorem={self.theorem.value}",
            f"instances={self.instances_checked}",
            f"failures={len(self.failures)}",
        ]
        lines.extend(failure.to_line() for failure in self.failures)
        return lines

    def summary(self, manifest_hash: str = "") -> bytes:
        payload = {
            "theorem": self.theorem.value,
            "instances": self.instances_checked,
            "failures": len(self.failures),
            "passed": self.passed,
            "manifest_sha256": manifest_hash,
        }
        return orjson.dumps(payload, option=orjson.OPT_SORT_KEYS)


class Witness(BaseModel):
    """A tightness witness: an instance the exact solver proves uncolorable."""

    model_config = ConfigDict(frozen=True)

    pattern: str
    rotation: Dict[int, Tuple[int, ...]]
    constraints: ConstraintSet = ConstraintSet()
    added: Tuple[int, ...] = ()
    triangles: int = 0

    @property
    def n(self) -> int:
        return len(self.rotation)

    def constraint_lines(self) -> List[str]:
        lines = [f"pattern {self.pattern}", f"triangles {self.triangles}"]
        lines.extend(f"fix {v}={c}" for v, c in self.constraints.fixed.items())
        lines.extend(f"equal {u},{v}" for u, v in sorted(self.constraints.equal_pairs))
        lines.extend(f"distinct {u},{v}" for u, v in sorted(self.constraints.distinct_pairs))
        if self.added:
            lines.append("added " + ",".join(str(v) for v in self.added))
        return lines
