"""
Sampled checks of the general weight-24 Chazy equation and the parametrized
families of generalized Chazy equations, plus the exact polynomial identities
relating the families to one another.
"""
import random
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from loguru import logger
from sympy import Poly, Symbol, expand, limit, oo  # type: ignore

from qforms import settings
from qforms.core.chazy import P3, P4, P12, U4, U6, U8, ChazyPolynomial

from .operators import PFOperator, chazy_residual, general_polynomial
from .ratfunc import RationalFunctionInT

M, N = Symbol("M"), Symbol("N")

Triple = Tuple[Fraction, Fraction, Fraction]


def family_m(m):
    """(M - 2) u4 u8 - (M - 3) u6^2 + 8M u4^3, weight 12."""
    return (m - 2) * U4 * U8 - (m - 3) * U6**2 + 8 * m * U4**3


def chazy_xii(n):
    """(N^2 - 36) u8 + 24 N^2 u4^2, weight 8."""
    return (n**2 - 36) * U8 + 24 * n**2 * U4**2


def family_mn(m, n):
    """Weight 12; chazy_xii times u4 when M = 3 and family_m as N grows."""
    k = (m - 2) ** 2 * n**2 - 4 * m**2
    return (
        k * ((m - 2) * U4 * U8 - (m - 3) * U6**2)
        + 8 * m * (m - 2) ** 2 * n**2 * U4**3
    )


def family_weight20(m, n):
    """Weight 20; (N^2 - 36) u6^2 times chazy_xii when M = 2."""
    k = (2 * m - 3) ** 2 * n**2 - 9 * m**2
    return (
        k**2 * ((m - 2) * U4 * U8 - (m - 3) * U6**2) * U8
        + 12
        * m
        * n**2
        * k
        * U4**2
        * (4 * (m - 2) * (2 * m - 3) * U4 * U8 - (m - 3) * (5 * m - 9) * U6**2)
        + 576 * m**2 * (m - 2) * (2 * m - 3) ** 2 * n**4 * U4**5
    )


def _cases(m: int, n: int) -> List[Tuple[str, Triple, object]]:
    F = Fraction
    return [
        ("family_m", (F(1, m), F(1, 2), F(0)), family_m(m)),
        ("family_m", (F(1, m), F(1, m), F(0)), family_m(m)),
        ("chazy_xii", (F(1, 3), F(1, 2), F(1, n)), chazy_xii(n)),
        ("chazy_xii", (F(1, 3), F(1, 3), F(2, n)), chazy_xii(n)),
        ("family_mn", (F(1, m), F(1, 2), F(1, n)), family_mn(m, n)),
        ("family_mn", (F(1, m), F(1, m), F(2, n)), family_mn(m, n)),
        ("family_weight20", (F(1, 3), F(1, m), F(1, n)), family_weight20(m, n)),
    ]


class SampleResult(NamedTuple):
    label: str
    triple: Triple
    t_star: Fraction
    passed: bool
    degenerate: bool = False
    residual: Optional[str] = None


def _check(
    label: str, triple: Triple, poly: ChazyPolynomial, t_star: Fraction
) -> SampleResult:
    op = PFOperator(*triple, t_star=t_star)
    if poly.is_zero() or op.is_degenerate():
        return SampleResult(label, triple, t_star, True, degenerate=True)
    residual: RationalFunctionInT = chazy_residual(op, poly)
    if residual.is_zero():
        return SampleResult(label, triple, t_star, True)
    logger.error(f"{label} at {triple}: nonzero residual {residual}")
    return SampleResult(
        label, triple, t_star, False, residual=str(residual.as_expr())
    )


def random_triple(rng: random.Random) -> Triple:
    """Rational points of (-2, 2)^3 off the planes alpha + beta +- gamma = 1."""
    while True:
        triple = tuple(
            Fraction(rng.randint(-39, 39), rng.randint(1, 20)) for _ in range(3)
        )
        a, b, g = triple
        if all(-2 < x < 2 for x in triple) and a + b + g != 1 and a + b - g != 1:
            return triple  # type: ignore


def sample_triples(sample_count: int, seed: int) -> List[Triple]:
    rng = random.Random(seed)
    return [random_triple(rng) for _ in range(sample_count)]


def check_general(triple: Triple, t_star: Fraction = Fraction(-1)) -> SampleResult:
    return _check("general", triple, general_polynomial(*triple), t_star)


def check_families(values: Optional[List[int]] = None) -> List[SampleResult]:
    results = []
    for m in values or range(2, 10):
        for n in values or range(2, 10):
            for family, triple, expr in _cases(m, n):
                poly = ChazyPolynomial.from_sympy(expand(expr), family)
                label = f"{family} M={m} N={n}"
                results.append(_check(label, triple, poly, Fraction(-1)))
    return results


def _proportional(a, b) -> bool:
    """a = c b for a nonzero c free of u4, u6, u8."""
    pa, pb = Poly(expand(a), U4, U6, U8), Poly(expand(b), U4, U6, U8)
    if pa.monoms() != pb.monoms():
        return False
    ratios = {
        expand(ca / cb).simplify() for ca, cb in zip(pa.coeffs(), pb.coeffs())
    }
    return len(ratios) == 1 and ratios.pop() != 0


def family_identities() -> Dict[str, bool]:
    """Exact specializations and formal limits, as polynomial identities in M or N."""
    weight20_n = limit(family_weight20(M, N) / N**4, N, oo)
    return {
        "family_m as M -> oo is p4": _proportional(
            limit(family_m(M) / M, M, oo), P4.as_sympy()
        ),
        "family_mn at M=3 is u4 chazy_xii": _proportional(
            family_mn(3, N), U4 * chazy_xii(N)
        ),
        "chazy_xii as N -> oo is p12": _proportional(
            limit(chazy_xii(N) / N**2, N, oo), P12.as_sympy()
        ),
        "family_mn as N -> oo is family_m": _proportional(
            limit(family_mn(M, N) / N**2, N, oo), (M - 2) ** 2 * family_m(M)
        ),
        "family_weight20 at M=2 is (N^2 - 36) u6^2 chazy_xii": _proportional(
            family_weight20(2, N), (N**2 - 36) * U6**2 * chazy_xii(N)
        ),
        "family_weight20 at M=2 as N -> oo is u6^2 p12": _proportional(
            weight20_n.subs(M, 2), U6**2 * P12.as_sympy()
        ),
        "family_weight20 at M=3 as N -> oo is u4 p12^2": _proportional(
            weight20_n.subs(M, 3), U4 * P12.as_sympy() ** 2
        ),
        "family_weight20 as M, N -> oo is p3": _proportional(
            limit(weight20_n / M**5, M, oo), P3.as_sympy()
        ),
    }


class TheoremReport(NamedTuple):
    samples: List[SampleResult]
    families: List[SampleResult]
    identities: Dict[str, bool]
    factorization: bool

    @property
    def passed(self) -> bool:
        return (
            all(s.passed for s in self.samples)
            and all(f.passed for f in self.families)
            and all(self.identities.values())
            and self.factorization
        )


def hecke_two_factorization() -> bool:
    """At (1/2, 0, 0) the general equation is u6^2 p4 / 32."""
    poly = general_polynomial(Fraction(1, 2), 0, 0).as_sympy()
    return expand(poly - U6**2 * P4.as_sympy() / 32) == 0


def verify_theorem_general(
    sample_count: Optional[int] = None,
    seed: Optional[int] = None,
    t_stars: Tuple[int, ...] = (-1, -64),
) -> TheoremReport:
    if sample_count is None:
        sample_count = settings.QFORMS_PF_SAMPLES
    seed = settings.QFORMS_SEED if seed is None else seed
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    samples = []
    for i, triple in enumerate(sample_triples(sample_count, seed)):
        samples.append(check_general(triple, Fraction(t_stars[i % len(t_stars)])))
    logger.debug(f"{sample_count} sampled triples checked with seed {seed}")
    return TheoremReport(
        samples, check_families(), family_identities(), hecke_two_factorization()
    )
