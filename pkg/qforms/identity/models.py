from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional

from pydantic import BaseModel, root_validator, validator


class Tier(str, Enum):
    GOLDEN = "golden"
    EXPANSION = "expansion"
    SYSTEM = "system"
    CHAZY = "chazy"
    HYPERGEOMETRIC = "hypergeometric"
    AGM = "agm"
    COUNTING = "counting"
    ARITHMETIC = "arithmetic"
    PICARD_FUCHS = "picard-fuchs"


class CoefficientCheck(BaseModel):
    """Expected coefficients of expr at exponents start, start + step, ..."""

    expr: str
    values: List[Fraction]
    start: Fraction = Fraction(0)
    step: Fraction = Fraction(1)

    class Config:
        arbitrary_types_allowed = True

    @validator("values", pre=True)
    def values_as_fractions(cls, v):
        return [Fraction(str(x)) for x in v]

    @validator("start", "step", pre=True)
    def as_fraction(cls, v):
        return Fraction(str(v))


class IdentityRecord(BaseModel):
    id: str
    tier: Tier
    topic: str
    citation: str
    d: int = 0
    precision: Optional[int] = None
    # exactly one of the four below
    equal: List[str] = []
    residuals: List[str] = []
    coefficients: Optional[CoefficientCheck] = None
    check: Optional[str] = None
    params: Dict[str, Any] = {}
    # report rational and radical parts of each residual separately
    split: bool = False

    class Config:
        arbitrary_types_allowed = True

    @root_validator(skip_on_failure=True)
    def one_kind(cls, values):
        kinds = [
            k
            for k in ("equal", "residuals", "coefficients", "check")
            if values.get(k)
        ]
        if len(kinds) != 1:
            raise ValueError(
                f"record {values.get('id')} needs exactly one of equal, residuals, "
                f"coefficients or check (got {kinds or 'none'})"
            )
        if values.get("equal") and len(values["equal"]) < 2:
            raise ValueError(f"record {values.get('id')}: equal needs two sides")
        return values

    @property
    def kind(self) -> str:
        for k in ("equal", "residuals", "coefficients", "check"):
            if getattr(self, k):
                return k
        return "check"


class FirstFailure(NamedTuple):
    exponent: Fraction
    lhs: str
    rhs: str

    def dict(self) -> Dict[str, str]:
        return {"exponent": str(self.exponent), "lhs": self.lhs, "rhs": self.rhs}


class ResidualVerdict(NamedTuple):
    label: str
    passed: bool
    first_failure: Optional[FirstFailure] = None


class VerdictReport(BaseModel):
    id: str
    tier: Tier
    citation: str
    precision: Optional[Fraction] = None
    checks: List[ResidualVerdict] = []
    error: Optional[str] = None
    millis: Optional[int] = None

    class Config:
        arbitrary_types_allowed = True

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[FirstFailure]:
        for c in self.checks:
            if not c.passed and c.first_failure:
                return c.first_failure
        return None

    def summary(self, timings: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "id": self.id,
            "tier": self.tier.value,
            "citation": self.citation,
            "pass": self.passed,
        }
        failure = self.first_failure
        if failure:
            out["first_failure"] = failure.dict()
        if self.error:
            out["error"] = self.error
        if timings and self.millis is not None:
            out["millis"] = self.millis
        return out


class CountKind(str, Enum):
    SQUARES = "squares"
    TRIANGLES = "triangles"


class CountingOracle(BaseModel):
    kind: CountKind
    s: int
    max_n: int

    @validator("s")
    def s_in_range(cls, v):
        if not 1 <= v <= 4:
            raise ValueError("s must be between 1 and 4")
        return v

    @validator("max_n")
    def positive_max_n(cls, v):
        if v < 1:
            raise ValueError("max_n must be at least 1")
        return v

    @property
    def label(self) -> str:
        letter = "r" if self.kind == CountKind.SQUARES else "t"
        return f"{letter}{2 * self.s}"


class CountingRow(NamedTuple):
    n: int
    lattice: int
    nonnegative: Optional[int]
    theta: Fraction
    formulas: Dict[str, Fraction]

    @property
    def agrees(self) -> bool:
        return self.theta == self.lattice and all(
            v == self.lattice for v in self.formulas.values()
        )
