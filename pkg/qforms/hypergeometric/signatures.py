from enum import Enum
from fractions import Fraction
from typing import Dict, NamedTuple, Optional, Tuple


class GroupKind(str, Enum):
    HECKE = "hecke"
    FRICKE = "fricke"
    ISOSCELES = "isosceles"


def _reciprocal(n: Optional[int]) -> Fraction:
    return Fraction(0) if n is None else Fraction(1, n)


class TriangleGroupSignature(NamedTuple):
    gid: str
    label: str
    kind: GroupKind
    n_a: Optional[int]  # None is a cusp
    n_b: Optional[int]
    n_c: Optional[int]
    width: int
    t_star: Fraction = Fraction(-1)

    @property
    def alpha(self) -> Fraction:
        return _reciprocal(self.n_a)

    @property
    def beta(self) -> Fraction:
        return _reciprocal(self.n_b)

    @property
    def gamma(self) -> Fraction:
        return _reciprocal(self.n_c)

    @property
    def exponents(self) -> Tuple[Fraction, Fraction, Fraction]:
        return self.alpha, self.beta, self.gamma

    @property
    def rho(self) -> Fraction:
        return 2 / (1 - self.alpha - self.beta - self.gamma)

    @property
    def ladder_scale(self) -> Fraction:
        """width * rho, the r of the u-ladder."""
        return self.width * self.rho

    def a_parameters(self) -> Tuple[Fraction, Fraction, Fraction]:
        """(lam, mu, nu) with A = 2F1(lam, mu; nu; C^rho / A^rho)."""
        a, b, c = self.exponents
        return (1 - a - b - c) / 2, (1 + a - b - c) / 2, 1 - c

    def b_parameters(self) -> Tuple[Fraction, Fraction, Fraction]:
        """(lam, mu, nu) with B = 2F1(lam, mu; nu; -C^rho / B^rho)."""
        a, b, c = self.exponents
        return (1 - a - b - c) / 2, (1 - a + b - c) / 2, 1 - c

    def c_parameters(self, at: str = "A") -> Tuple[Fraction, Fraction, Fraction]:
        """
        (lam, mu, nu) with C proportional to 2F1(lam, mu; nu; A^rho / C^rho)
        near class A, or with -B^rho / C^rho near class B.
        """
        a, b, c = self.exponents
        nu = 1 - a if at == "A" else 1 - b
        return (1 - a - b - c) / 2, (1 - a - b + c) / 2, nu

    def is_valid(self) -> bool:
        return self.alpha + self.beta + self.gamma < 1


def _signature(*args, **kwargs) -> TriangleGroupSignature:
    sig = TriangleGroupSignature(*args, **kwargs)
    if not sig.is_valid():
        raise ValueError(f"{sig.gid} is not hyperbolic")
    return sig


SIGNATURES: Dict[str, TriangleGroupSignature] = {
    s.gid: s
    for s in (
        _signature(
            "gamma0_2", "Gamma0(2)", GroupKind.HECKE, 2, None, None, 1, Fraction(-64)
        ),
        _signature(
            "gamma0_3", "Gamma0(3)", GroupKind.HECKE, 3, None, None, 1, Fraction(-27)
        ),
        _signature(
            "gamma0_4", "Gamma0(4)", GroupKind.HECKE, None, None, None, 1, Fraction(-16)
        ),
        _signature("gamma1", "Gamma(1)", GroupKind.FRICKE, 3, 2, None, 1),
        _signature("gamma0p_2", "Gamma0+(2)", GroupKind.FRICKE, 4, 2, None, 1),
        _signature("gamma0p_3", "Gamma0+(3)", GroupKind.FRICKE, 6, 2, None, 1),
        _signature("iso_2a", "2a'", GroupKind.ISOSCELES, 3, 3, None, 2),
        _signature("iso_4a", "4a'", GroupKind.ISOSCELES, 4, 4, None, 2),
        _signature("iso_6a", "6a'", GroupKind.ISOSCELES, 6, 6, None, 2),
    )
}


def signature(gid: str) -> TriangleGroupSignature:
    try:
        return SIGNATURES[gid]
    except KeyError:
        raise KeyError(f"unknown group {gid!r}; known: {', '.join(SIGNATURES)}")
