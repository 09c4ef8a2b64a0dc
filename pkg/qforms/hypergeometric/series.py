from fractions import Fraction
from typing import Sequence, Union

from qforms.core.qseries import PuiseuxSeries, derive, invert, mul

Number = Union[int, Fraction]


class HypergeometricError(Exception):
    pass


def _term_ratio_series(
    upper: Sequence[Number], lower: Sequence[Number], precision: int
) -> PuiseuxSeries:
    # c_(n+1) / c_n = prod (a + n) / ((n + 1) prod (b + n))
    for b in lower:
        b = Fraction(b)
        if b <= 0 and b.denominator == 1:
            raise HypergeometricError(f"lower parameter {b} is a pole")
    coeffs = {0: Fraction(1)}
    c = Fraction(1)
    for n in range(precision - 1):
        num = Fraction(1)
        for a in upper:
            num *= Fraction(a) + n
        if not num:
            break
        den = Fraction(n + 1)
        for b in lower:
            den *= Fraction(b) + n
        c = c * num / den
        coeffs[n + 1] = c
    return PuiseuxSeries(coeffs, 1, precision)


def two_f_one_series(
    lam: Number, mu: Number, nu: Number, precision: int
) -> PuiseuxSeries:
    """2F1(lam, mu; nu; x) = sum (lam)_n (mu)_n / ((nu)_n n!) x^n, to O(x^precision)."""
    return _term_ratio_series((lam, mu), (nu,), precision)


def three_f_two_series(
    upper: Sequence[Number], lower: Sequence[Number], precision: int
) -> PuiseuxSeries:
    """The 3F2 of a Clausen square, by its term recurrence."""
    if len(upper) != 3 or len(lower) != 2:
        raise HypergeometricError("3F2 takes three upper and two lower parameters")
    return _term_ratio_series(upper, lower, precision)


def theta_operator(f: PuiseuxSeries, x: PuiseuxSeries) -> PuiseuxSeries:
    """x d/dx applied to f, both given as series in q: x f' / x'."""
    dx = derive(x)
    return mul(mul(x, derive(f)), invert(dx))


def hypergeometric_residual(
    upper: Sequence[Number],
    lower: Sequence[Number],
    f: PuiseuxSeries,
    x: PuiseuxSeries,
) -> PuiseuxSeries:
    """
    [theta prod (theta + b - 1) - x prod (theta + a)] f with theta = x d/dx.
    Zero exactly when f, as a function of x, solves the hypergeometric equation
    with these parameters; the solution need not be the one regular at x = 0.
    """

    def apply(shifts: Sequence[Fraction], g: PuiseuxSeries) -> PuiseuxSeries:
        for s in shifts:
            g = theta_operator(g, x) + g.scale(s)
        return g

    left = apply([Fraction(0)] + [Fraction(b) - 1 for b in lower], f)
    right = apply([Fraction(a) for a in upper], f)
    return left - mul(x, right)
