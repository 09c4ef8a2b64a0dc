from fractions import Fraction
from math import gcd
from typing import Any, Dict, Iterator, Mapping, Optional, Tuple, Union

from sympy import Poly, Rational, symbols  # type: ignore

U4, U6, U8 = symbols("u4 u6 u8")

Monomial = Tuple[int, int, int]


class ChazyPolynomialError(Exception):
    pass


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    # sympy Rational
    return Fraction(int(value.p), int(value.q))


class ChazyPolynomial:
    """
    Polynomial in u4, u6, u8 stored as {(a, b, c): coefficient} for u4^a u6^b u8^c.
    """

    __slots__ = ("name", "terms")

    def __init__(self, terms: Mapping[Monomial, Any], name: str = ""):
        self.name = name
        self.terms: Dict[Monomial, Fraction] = {
            m: _fraction(c) for m, c in terms.items() if c
        }

    @staticmethod
    def monomial_weight(m: Monomial) -> int:
        a, b, c = m
        return 4 * a + 6 * b + 8 * c

    def weights(self) -> set:
        return {self.monomial_weight(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    @property
    def weight(self) -> int:
        found = self.weights()
        if len(found) != 1:
            raise ChazyPolynomialError(
                f"{self.name or self} is not homogeneous (weights {sorted(found)})"
            )
        return found.pop()

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChazyPolynomial):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore

    def scale(self, value: Union[int, Fraction]) -> "ChazyPolynomial":
        return ChazyPolynomial({m: c * value for m, c in self.terms.items()}, self.name)

    def proportional_to(self, other: "ChazyPolynomial") -> Optional[Fraction]:
        """The factor f with self = f * other, if any."""
        if set(self.terms) != set(other.terms) or not self.terms:
            return None
        ratios = {self.terms[m] / other.terms[m] for m in self.terms}
        return ratios.pop() if len(ratios) == 1 else None

    def evaluate(self, values: Mapping[int, Any]) -> Any:
        """
        Substitute u_k -> values[k]. Works on anything with + and *, such as
        q-series or rational functions in t.
        """
        self.weight  # raises unless homogeneous
        powers: Dict[Tuple[int, int], Any] = {}

        def power(k: int, e: int):
            if (k, e) not in powers:
                powers[(k, e)] = values[k] if e == 1 else power(k, e - 1) * values[k]
            return powers[(k, e)]

        total = None
        for (a, b, c), coeff in self:
            term: Any = None
            for k, e in ((4, a), (6, b), (8, c)):
                if e:
                    term = power(k, e) if term is None else term * power(k, e)
            term = term * coeff
            total = term if total is None else total + term
        if total is None:
            raise ChazyPolynomialError("cannot evaluate the zero polynomial")
        return total

    def as_sympy(self):
        return sum(
            (
                Rational(c.numerator, c.denominator) * U4**a * U6**b * U8**e
                for (a, b, e), c in self.terms.items()
            ),
            Rational(0),
        )

    @classmethod
    def from_sympy(cls, expr, name: str = "") -> "ChazyPolynomial":
        poly = Poly(expr, U4, U6, U8)
        return cls({m: _fraction(c) for m, c in poly.terms()}, name)

    def render(self) -> str:
        parts = []
        for (a, b, c), coeff in self:
            factors = [
                f"u{k}" + (f"^{e}" if e > 1 else "")
                for k, e in ((4, a), (6, b), (8, c))
                if e
            ]
            parts.append(f"({coeff})*" + "*".join(factors))
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"ChazyPolynomial({self.name}: {self.render()})"


def polynomial(name: str, **terms: Any) -> ChazyPolynomial:
    """polynomial("p4", u4u8=1, u6u6=-1, u4u4u4=8)"""
    parsed: Dict[Monomial, Any] = {}
    for key, coeff in terms.items():
        exps = [0, 0, 0]
        for k in key.split("u")[1:]:
            exps[{"4": 0, "6": 1, "8": 2}[k]] += 1
        parsed[tuple(exps)] = coeff  # type: ignore
    return ChazyPolynomial(parsed, name)


P4 = polynomial("p4", u4u8=1, u6u6=-1, u4u4u4=8)
P3 = polynomial(
    "p3",
    u4u8u8=1,
    u6u6u8=-1,
    u4u4u4u8=24,
    u4u4u6u6=-15,
    u4u4u4u4u4=144,
)
P2 = ChazyPolynomial(P4.terms, "p2")
P12 = polynomial("p12", u8=1, u4u4=24)
P8 = polynomial("p8", u4u8=2, u6u6=-1, u4u4u4=32)
P6 = polynomial("p6", u4u8=4, u6u6=-3, u4u4u4=48)

CHAZY_POLYNOMIALS: Dict[str, ChazyPolynomial] = {
    p.name: p for p in (P4, P3, P2, P12, P8, P6)
}


def primitive(p: ChazyPolynomial) -> ChazyPolynomial:
    """Scale to coprime integer coefficients, keeping the sign."""
    if p.is_zero():
        return p
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = gcd(num, int(c * den))
    return p.scale(Fraction(den, num))


def to_ladder(p: ChazyPolynomial, scale: int) -> ChazyPolynomial:
    """
    The relation p(u4, u6, u8) = 0 restated for the ladder values v_k computed
    with the q-derivative, where u_k = (2 pi i)^(k/2) v_k / scale^2. The powers of
    2 pi i cancel by homogeneity; each factor contributes scale^(-2).
    """
    p.weight  # raises unless homogeneous
    terms = {m: c / Fraction(scale) ** (2 * sum(m)) for m, c in p.terms.items()}
    return primitive(ChazyPolynomial(terms, f"{p.name}/ladder{scale}"))
