from fractions import Fraction
from typing import Any, List, NamedTuple, Optional, Tuple

from pydantic import BaseModel, validator

from qforms.core.qseries import Scalar


class EtaQuotient(NamedTuple):
    factors: Tuple[Tuple[int, int], ...]  # (delta, exponent)
    prefactor: Scalar = 1


class LatticeRule(NamedTuple):
    """
    sum over x in Z^dim of phase(x) q^Q(x + shift), with
    Q(x, y) = a x^2 + b x y + c y^2 (only a is used when dim is 1).
    The phase is values[(l . x) mod len(values)].
    """

    name: str
    dim: int
    form: Tuple[int, int, int]
    shift: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    linear: Tuple[int, int] = (0, 0)
    values: Tuple[Scalar, ...] = (1,)
    d: int = 0


class ThetaSum(NamedTuple):
    rule: LatticeRule


class DivisorSeries(NamedTuple):
    """constant + scale * sum_n sigma_k(n; w) q^(n step), or the conjugate sum."""

    k: int
    weights: Tuple[Fraction, ...]
    constant: Fraction = Fraction(0)
    scale: Fraction = Fraction(1)
    conjugate: bool = False
    step: Fraction = Fraction(1)


class EisensteinTerm(NamedTuple):
    coeff: Scalar
    k: int
    psi: str = "1"
    phi: str = "1"
    power: Fraction = Fraction(1)


class EisensteinCombo(NamedTuple):
    terms: Tuple[EisensteinTerm, ...]


class Expr(NamedTuple):
    text: str


CONSTRUCTORS = (EtaQuotient, ThetaSum, DivisorSeries, EisensteinCombo, Expr)


class FormDescriptor(BaseModel):
    name: str
    routes: List[Any]
    weight: Fraction
    group: str
    d: int = 0
    order: Optional[Fraction] = None
    note: str = ""

    class Config:
        arbitrary_types_allowed = True

    @validator("routes")
    def known_constructors(cls, v):
        if not v:
            raise ValueError("a form needs at least one construction route")
        for route in v:
            if not isinstance(route, CONSTRUCTORS):
                raise ValueError(f"unknown constructor {route!r}")
        return v

    @validator("weight", "order", pre=True)
    def as_fraction(cls, v):
        if v is None or isinstance(v, Fraction):
            return v
        return Fraction(v)

    @property
    def primary(self):
        return self.routes[0]


class RouteCheck(NamedTuple):
    """A construction route (or the declared order) checked against the primary."""

    form: str
    route: str
    passed: bool
    exponent: Optional[Fraction] = None
    expected: Any = None
    found: Any = None
