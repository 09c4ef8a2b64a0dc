from fractions import Fraction
from typing import Optional, Union

from loguru import logger

from qforms.core.qseries import PuiseuxSeries, QuadExtScalar, sub
from qforms.identity.models import FirstFailure, ResidualVerdict

Precision = Union[int, Fraction]


def render_coefficient(c) -> str:
    """"a" or "a+b*w", ASCII only."""
    if isinstance(c, QuadExtScalar):
        return c.render()
    return str(c)


def reach(series: PuiseuxSeries, precision: Precision) -> Fraction:
    """The precision a verdict on this series can honestly claim."""
    if series.precision is None:
        return Fraction(precision)
    return min(series.precision, Fraction(precision))


def short_of(label: str, reached: Fraction, precision: Precision) -> ResidualVerdict:
    """A residual that vanishes as far as it is known, but stops before O(q^P)."""
    logger.error(f"{label}: only reached O(q^{reached}), needed O(q^{precision})")
    return ResidualVerdict(
        label,
        False,
        FirstFailure(reached, f"reached O(q^{reached})", f"O(q^{precision})"),
    )


def judge(label: str, residual: PuiseuxSeries, precision: Precision) -> ResidualVerdict:
    """A residual passes when every coefficient below the precision is zero."""
    bound = reach(residual, precision)
    residual = residual.truncate(bound)
    if residual.is_zero():
        if bound < precision:
            return short_of(label, bound, precision)
        return ResidualVerdict(label, True)
    exponent, c = residual.leading()
    logger.error(f"{label}: residual starts {render_coefficient(c)} q^{exponent}")
    return ResidualVerdict(
        label, False, FirstFailure(exponent, render_coefficient(c), "0")
    )


def compare(
    label: str, lhs: PuiseuxSeries, rhs: PuiseuxSeries, precision: Precision
) -> ResidualVerdict:
    bound = min(reach(lhs, precision), reach(rhs, precision))
    difference = sub(lhs, rhs).truncate(bound)
    if difference.is_zero():
        if bound < precision:
            return short_of(label, bound, precision)
        return ResidualVerdict(label, True)
    exponent = difference.valuation()
    assert exponent is not None
    left, right = lhs.coefficient(exponent), rhs.coefficient(exponent)
    logger.error(
        f"{label}: sides differ at q^{exponent}: "
        f"{render_coefficient(left)} != {render_coefficient(right)}"
    )
    return ResidualVerdict(
        label,
        False,
        FirstFailure(exponent, render_coefficient(left), render_coefficient(right)),
    )


def split_parts(series: PuiseuxSeries, label: str):
    """(label, part) pairs for the rational and radical parts of a series."""
    if series.d == 0:
        return [(label, series)]
    return [
        (f"{label} (rational part)", series.rational_part()),
        (f"{label} (w part)", series.radical_part()),
    ]


def flag(label: str, passed: bool, detail: Optional[str] = None) -> ResidualVerdict:
    """A verdict for a check that has no series behind it."""
    if passed:
        return ResidualVerdict(label, True)
    logger.error(f"{label}: failed{f' ({detail})' if detail else ''}")
    return ResidualVerdict(label, False, FirstFailure(Fraction(0), detail or "", ""))
