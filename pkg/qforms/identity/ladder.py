"""
Coupled first-order systems and generalized Chazy residuals for the nine
triangle groups, with the q-derivative q d/dq throughout.
"""
from fractions import Fraction
from typing import Dict, Optional

from qforms import settings
from qforms.core.chazy import CHAZY_POLYNOMIALS, ChazyPolynomial, to_ladder
from qforms.core.qseries import PuiseuxSeries, derive, rational_pow
from qforms.forms.groups import group_forms
from qforms.forms.registry import eval_form

# the polynomial relation each group's ladder satisfies
GROUP_POLYNOMIALS: Dict[str, str] = {
    "gamma0_2": "p4",
    "gamma0_3": "p3",
    "gamma0_4": "p2",
    "gamma1": "p12",
    "gamma0p_2": "p8",
    "gamma0p_3": "p6",
    "iso_2a": "p12",
    "iso_4a": "p8",
    "iso_6a": "p6",
}


class GroupSeries:
    """
    A^rho, B^rho, C^rho and E of one group at a common precision. The forms are
    evaluated past it by the configured slack, since dividing by C^rho costs
    its order at the cusp.
    """

    def __init__(self, gid: str, precision: Fraction):
        self.forms = group_forms(gid)
        self.signature = self.forms.signature
        self.precision = Fraction(precision)
        working = self.precision + settings.QFORMS_PRECISION_SLACK
        self.a = eval_form(self.forms.name("A^rho"), working)
        self.b = eval_form(self.forms.name("B^rho"), working)
        self.c = eval_form(self.forms.name("C^rho"), working)
        self.e = eval_form(self.forms.name("E"), working)

    def power(self, which: str, exponent: Fraction) -> PuiseuxSeries:
        """X^(rho * exponent) from the stored X^rho."""
        return rational_pow(getattr(self, which), Fraction(exponent))

    def log_derivative(self, which: str) -> PuiseuxSeries:
        """X'/X = (X^rho)' / (rho X^rho)."""
        base = getattr(self, which)
        return (derive(base) / base).scale(1 / self.signature.rho)


def system_residuals(gid: str, precision: Fraction) -> Dict[str, PuiseuxSeries]:
    """
    width (A^rho)' = E A^rho - A^(rho(1 - alpha)) B^(rho(1 - beta)), the same for
    B^rho, width (C^rho)' = E C^rho and
    width rho E' = E^2 - A^(rho(1 - 2 alpha)) B^(rho(1 - 2 beta)).
    """
    g = GroupSeries(gid, precision)
    alpha, beta, _ = g.signature.exponents
    width = g.signature.width
    cross = g.power("a", 1 - alpha) * g.power("b", 1 - beta)
    return {
        "A": derive(g.a).scale(width) - (g.e * g.a - cross),
        "B": derive(g.b).scale(width) - (g.e * g.b - cross),
        "C": derive(g.c).scale(width) - g.e * g.c,
        "E": derive(g.e).scale(width * g.signature.rho)
        - (g.e * g.e - g.power("a", 1 - 2 * alpha) * g.power("b", 1 - 2 * beta)),
    }


def halphen_residuals(gid: str, precision: Fraction) -> Dict[str, PuiseuxSeries]:
    """
    v_X = X'/X satisfy v_A' = v_A^2 - (1 + rho alpha)(v_A - v_B)(v_A - v_C) and
    its cyclic permutations.
    """
    g = GroupSeries(gid, precision)
    rho = g.signature.rho
    v = {x: g.log_derivative(x) for x in "abc"}
    exponents = dict(zip("abc", g.signature.exponents))
    residuals = {}
    for x, y, z in ("abc", "bca", "cab"):
        rhs = v[x] * v[x] - ((v[x] - v[y]) * (v[x] - v[z])).scale(
            1 + rho * exponents[x]
        )
        residuals[x.upper()] = derive(v[x]) - rhs
    return residuals


def ladder_values(gid: str, precision: Fraction) -> Dict[int, PuiseuxSeries]:
    return {k: eval_form(f"{gid}.u{k}", precision) for k in (4, 6, 8)}


def group_polynomial(gid: str) -> ChazyPolynomial:
    """The group's Chazy relation, rescaled for the q-derivative ladder."""
    scale = group_forms(gid).signature.ladder_scale
    return to_ladder(CHAZY_POLYNOMIALS[GROUP_POLYNOMIALS[gid]], int(scale))


def chazy_residual_series(
    gid: str, precision: Fraction, poly: Optional[ChazyPolynomial] = None
) -> PuiseuxSeries:
    poly = poly or group_polynomial(gid)
    return poly.evaluate(ladder_values(gid, precision))
