from fractions import Fraction
from typing import Union

from sympy import QQ, Poly, Rational, Symbol  # type: ignore

from qforms.core.qseries import PuiseuxSeries

t = Symbol("t")

Number = Union[int, Fraction]


def _qq(value: Number):
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


class RationalFunctionInT:
    """num(t)/den(t) over Q, kept with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly(num, t, domain=QQ)
        den = Poly(1 if den is None else den, t, domain=QQ)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        g = num.gcd(den)
        if not g.is_one:
            num, den = num.exquo(g), den.exquo(g)
        lead = den.LC()
        if lead != 1:
            num, den = num.quo_ground(lead), den.quo_ground(lead)
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, value: Number) -> "RationalFunctionInT":
        return cls(Poly(_qq(value), t, domain=QQ))

    @classmethod
    def variable(cls) -> "RationalFunctionInT":
        return cls(Poly(t, t, domain=QQ))

    @classmethod
    def of(cls, other) -> "RationalFunctionInT":
        if isinstance(other, RationalFunctionInT):
            return other
        return cls.constant(other)

    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other):
        other = RationalFunctionInT.of(other)
        return RationalFunctionInT(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionInT(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunctionInT.of(other))

    def __rsub__(self, other):
        return RationalFunctionInT.of(other) - self

    def __mul__(self, other):
        other = RationalFunctionInT.of(other)
        return RationalFunctionInT(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunctionInT.of(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunctionInT(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunctionInT.of(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunctionInT.constant(1) / self**-n
        return RationalFunctionInT(self.num**n, self.den**n)

    def __eq__(self, other) -> bool:
        other = RationalFunctionInT.of(other)
        return self.num == other.num and self.den == other.den

    __hash__ = None  # type: ignore

    def derivative(self) -> "RationalFunctionInT":
        """d/dt."""
        return RationalFunctionInT(
            self.num.diff(t) * self.den - self.num * self.den.diff(t), self.den**2
        )

    def rescale(self, c: Number) -> "RationalFunctionInT":
        """f(c t)."""
        c = _qq(c)
        return RationalFunctionInT(
            Poly(self.num.as_expr().subs(t, c * t), t, domain=QQ),
            Poly(self.den.as_expr().subs(t, c * t), t, domain=QQ),
        )

    def at(self, value: Number) -> Fraction:
        den = self.den.eval(_qq(value))
        if den == 0:
            raise ZeroDivisionError(f"pole at t = {value}")
        result = self.num.eval(_qq(value)) / den
        return Fraction(int(result.p), int(result.q))

    def on_series(self, x: PuiseuxSeries) -> PuiseuxSeries:
        """Substitute a q-series for t, by Horner's rule."""
        return _horner(self.num, x) / _horner(self.den, x)

    def as_expr(self):
        return self.num.as_expr() / self.den.as_expr()

    def __repr__(self) -> str:
        return f"RationalFunctionInT({self.as_expr()})"


def _horner(p: Poly, x: PuiseuxSeries) -> PuiseuxSeries:
    result = PuiseuxSeries.zero(None, x.d)
    for c in p.all_coeffs():
        result = result * x + Fraction(int(c.p), int(c.q))
    return result
