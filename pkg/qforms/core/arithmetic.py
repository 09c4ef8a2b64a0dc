from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Callable, Dict, List, NamedTuple, Sequence, Tuple, Union

from sympy import divisors, jacobi_symbol  # type: ignore

from .qseries import PuiseuxSeries, invert, mul


class ArithmeticInputError(Exception):
    pass


Number = Union[int, Fraction]


class WeightVector(NamedTuple):
    modulus: int
    values: Tuple[Fraction, ...]

    @classmethod
    def of(cls, *values: Number) -> "WeightVector":
        if not values:
            raise ArithmeticInputError("a weight vector needs at least one value")
        return cls(len(values), tuple(Fraction(v) for v in values))

    def __call__(self, n: int) -> Fraction:
        return self.values[n % self.modulus]

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


class DirichletCharacter(NamedTuple):
    name: str
    modulus: int
    values: Tuple[Fraction, ...]
    parity: int

    def __call__(self, n: int) -> Fraction:
        return self.values[n % self.modulus]

    @property
    def is_trivial(self) -> bool:
        return self.modulus == 1


def _character(
    name: str, modulus: int, rule: Callable[[int], int]
) -> DirichletCharacter:
    values = tuple(Fraction(rule(a)) for a in range(modulus))
    parity = int(values[(modulus - 1) % modulus]) if modulus > 1 else 1
    return DirichletCharacter(name, modulus, values, parity)


def _chi_minus_4(a: int) -> int:
    return 0 if a % 2 == 0 else jacobi_symbol(-1 % a, a)


CHARACTERS: Dict[str, DirichletCharacter] = {
    "1": _character("1", 1, lambda a: 1),
    "1_2": _character("1_2", 2, lambda a: 1 if gcd(a, 2) == 1 else 0),
    "1_3": _character("1_3", 3, lambda a: 1 if gcd(a, 3) == 1 else 0),
    "1_4": _character("1_4", 4, lambda a: 1 if gcd(a, 4) == 1 else 0),
    "chi-3": _character("chi-3", 3, lambda a: jacobi_symbol(a % 3, 3)),
    "chi-4": _character("chi-4", 4, _chi_minus_4),
}


def character(name: str) -> DirichletCharacter:
    try:
        return CHARACTERS[name]
    except KeyError:
        raise ArithmeticInputError(f"unknown character {name!r}")


def sigma(k: int, n: int, w: WeightVector) -> Fraction:
    """Sum over d | n of w(d) d^k."""
    return sum((w(d) * d**k for d in divisors(n)), Fraction(0))


def sigma_conj(k: int, n: int, w: WeightVector) -> Fraction:
    """Sum over d | n of w(n/d) d^k."""
    return sum((w(n // d) * d**k for d in divisors(n)), Fraction(0))


def divisor_table(
    k: int, w: WeightVector, size: int, conjugate: bool = False
) -> List[Fraction]:
    """sigma_k(n; w) (or the conjugate sum) for n < size, by sieving over divisors."""
    table = [Fraction(0)] * max(size, 1)
    for d in range(1, size):
        if conjugate:
            for e in range(1, (size - 1) // d + 1):
                table[d * e] += w(e) * d**k
        else:
            weight = w(d) * d**k
            if weight:
                for n in range(d, size, d):
                    table[n] += weight
    return table


def eisenstein_kernel_table(
    k: int, psi: DirichletCharacter, phi: DirichletCharacter, size: int
) -> List[Fraction]:
    """Coefficients of sum psi(e) phi(d) d^(k-1) q^(ed), for exponents < size."""
    table = [Fraction(0)] * max(size, 1)
    for d in range(1, size):
        weight = phi(d) * d ** (k - 1)
        if not weight:
            continue
        for e in range(1, (size - 1) // d + 1):
            table[d * e] += psi(e) * weight
    return table


@lru_cache(maxsize=None)
def _bernoulli_table(count: int) -> Tuple[Fraction, ...]:
    # x/(e^x - 1) is the inverse of (e^x - 1)/x = sum x^n/(n+1)!
    series = PuiseuxSeries(
        {n: Fraction(1, factorial(n + 1)) for n in range(count)}, 1, count
    )
    inverse = invert(series)
    return tuple(inverse.coefficient(n) * factorial(n) for n in range(count))


def bernoulli(k: int) -> Fraction:
    if k < 0:
        raise ArithmeticInputError("Bernoulli index must be nonnegative")
    return _bernoulli_table(max(32, k + 1))[k]


def eisenstein_constant(k: int) -> Fraction:
    """a_k in E_k = 1 + a_k sum sigma_(k-1)(n) q^n."""
    return -2 * k / bernoulli(k)


def generalized_bernoulli(k: int, phi: DirichletCharacter):
    """
    B_(k,phi) from x/(e^(Nx) - 1) * sum_(a=0)^(N-1) phi(a) e^(ax).
    """
    if k < 0:
        raise ArithmeticInputError("Bernoulli index must be nonnegative")
    N = phi.modulus
    count = k + 2
    kernel = PuiseuxSeries(
        {j: bernoulli(j) * Fraction(N) ** (j - 1) / factorial(j) for j in range(count)},
        1,
        count,
    )
    exponentials = PuiseuxSeries(
        {
            m: sum((phi(a) * a**m for a in range(N)), Fraction(0)) / factorial(m)
            for m in range(count)
        },
        1,
        count,
    )
    return mul(kernel, exponentials).coefficient(k) * factorial(k)


def l_value(k: int, phi: DirichletCharacter):
    """L(1 - k, phi) = -B_(k,phi)/k."""
    return -generalized_bernoulli(k, phi) / k


class GroupElement(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def normalized(self) -> Tuple["GroupElement", bool]:
        """(g, flipped) with c > 0, or c = 0 and d > 0."""
        if self.c < 0 or (self.c == 0 and self.d < 0):
            return -self, True
        return self, False


IDENTITY = GroupElement(1, 0, 0, 1)

# Gamma(1) is level 1; the others are the standard minimal sets for Gamma0(N)
GENERATORS: Dict[int, List[GroupElement]] = {
    1: [GroupElement(1, 1, 0, 1), GroupElement(0, -1, 1, 0)],
    2: [GroupElement(1, 1, 0, 1), GroupElement(1, -1, 2, -1)],
    3: [GroupElement(1, 1, 0, 1), GroupElement(1, 1, -3, -2)],
    4: [GroupElement(1, 1, 0, 1), GroupElement(1, -1, 4, -3)],
}


class EtaMultiplier(NamedTuple):
    sign: int
    exponent: int

    @property
    def total(self) -> int:
        """Exponent of zeta_24 once the sign is folded in."""
        return (self.exponent + (12 if self.sign < 0 else 0)) % 24


def eta_multiplier(g: GroupElement) -> EtaMultiplier:
    """
    eta(g tau) = sign * zeta_24^exponent * [-i(c tau + d)]^(1/2) * eta(tau),
    for g with c > 0, or the translation with c = 0, d = 1.
    """
    a, b, c, d = g
    if a * d - b * c != 1:
        raise ArithmeticInputError(f"{g} is not in SL(2, Z)")
    if c < 0 or (c == 0 and d != 1):
        raise ArithmeticInputError(f"{g} must be normalized to c > 0 first")
    if c % 2 == 1:
        sign = jacobi_symbol(d % c, c)
        exponent = 3 * (1 - c) + b * d * (1 - c * c) + c * (a + d)
    else:
        n = abs(d)
        sign = jacobi_symbol(c % n, n) if n > 1 else 1
        exponent = 3 * d + a * c * (1 - d * d) + d * (b - c)
    return EtaMultiplier(int(sign), exponent % 24)


EtaFactors = Sequence[Tuple[int, int]]


def eta_quotient_weight(quotient: EtaFactors) -> Fraction:
    return Fraction(sum(r for _, r in quotient), 2)


def eta_quotient_multiplier(quotient: EtaFactors, g: GroupElement) -> int:
    """
    Exponent e of zeta_24 with f(g tau) = zeta_24^e (c tau + d)^k f(tau), for an
    integer-weight eta quotient f and g in Gamma0(N).
    """
    k = eta_quotient_weight(quotient)
    if k.denominator != 1:
        raise ArithmeticInputError("multiplier characters need integer weight")
    g, flipped = g.normalized()
    total = -6 * int(k)  # (-i)^k
    for delta, r in quotient:
        if g.c % delta:
            raise ArithmeticInputError(f"{g} is not in Gamma0({delta})")
        g_delta = GroupElement(g.a, g.b * delta, g.c // delta, g.d)
        total += r * eta_multiplier(g_delta).total
    if flipped and int(k) % 2:
        total += 12
    return total % 24


def character_exponent(chi: DirichletCharacter, d: int) -> int:
    value = chi(d)
    if value == 1:
        return 0
    if value == -1:
        return 12
    raise ArithmeticInputError(f"{chi.name}({d}) = {value} is not a sign")


class CuspData(NamedTuple):
    level: int
    a: int
    d: int
    width: int

    def __str__(self) -> str:
        return "oo" if self.d == self.level else f"{self.a}/{self.d}"


def cusp(level: int, a: int, d: int) -> CuspData:
    if level % d:
        raise ArithmeticInputError(f"cusp denominator {d} does not divide {level}")
    width = level // (d * gcd(d, level // d))
    return CuspData(level, a, d, width)


def cusps(level: int) -> List[CuspData]:
    """Inequivalent cusps of Gamma0(level); infinity is the one with d = level."""
    found = []
    for d in divisors(level):
        g = gcd(d, level // d)
        for a in range(1, max(g, 1) + 1):
            if gcd(a, g) == 1 and gcd(a, d) == 1:
                found.append(cusp(level, a, d))
    return found


def eta_quotient_order_at_cusp(quotient: EtaFactors, at: CuspData) -> Fraction:
    """Order of vanishing at a cusp, measured in the local parameter there."""
    for delta, _ in quotient:
        if at.level % delta:
            raise ArithmeticInputError(f"{delta} does not divide {at.level}")
    local = sum(
        (Fraction(r * gcd(delta, at.d) ** 2, 24 * delta) for delta, r in quotient),
        Fraction(0),
    )
    return at.width * local


# indices of Gamma0(N) in Gamma(1)
SUBGROUP_INDEX: Dict[int, int] = {1: 1, 2: 3, 3: 4, 4: 6}

# dim M_k for the spaces in scope, keyed (level, character, weight)
DIMENSIONS: Dict[Tuple[int, str, int], int] = {
    (2, "1_2", 2): 1,
    (2, "1_2", 4): 2,
    (2, "1_2", 6): 2,
    (3, "1_3", 2): 1,
    (3, "1_3", 4): 2,
    (4, "1_4", 2): 2,
    (4, "1_4", 4): 3,
    (3, "chi-3", 1): 1,
    (3, "chi-3", 3): 2,
    (3, "chi-3", 5): 2,
    (4, "chi-4", 1): 1,
    (4, "chi-4", 3): 2,
}


def valence_total(weight: Number, level: int) -> Fraction:
    return Fraction(weight) * SUBGROUP_INDEX[level] / 12
