from fractions import Fraction
from math import ceil, isqrt
from typing import Dict, Iterable, Sequence, Tuple, Union

from qforms.core.arithmetic import (
    DirichletCharacter,
    WeightVector,
    divisor_table,
    eisenstein_constant,
    eisenstein_kernel_table,
    l_value,
)
from qforms.core.qseries import (
    PuiseuxSeries,
    Scalar,
    mul,
    rational_pow,
)

from .models import LatticeRule

Precision = Union[int, Fraction]


class IndefiniteFormError(Exception):
    pass


def pentagonal(delta: int, precision: Precision) -> PuiseuxSeries:
    """prod (1 - q^(delta n)) by Euler's pentagonal number theorem."""
    coeffs: Dict[int, int] = {0: 1}
    k = 1
    while True:
        low = delta * k * (3 * k - 1) // 2
        if low >= precision:
            break
        sign = -1 if k % 2 else 1
        coeffs[low] = sign
        high = delta * k * (3 * k + 1) // 2
        if high < precision:
            coeffs[high] = sign
        k += 1
    return PuiseuxSeries(coeffs, 1, precision)


def eta_product(
    factors: Sequence[Tuple[int, int]],
    precision: Precision,
    prefactor: Scalar = 1,
    d: int = 0,
) -> PuiseuxSeries:
    """prefactor * prod eta(delta tau)^r, trusted below `precision`."""
    precision = Fraction(precision)
    shift = sum((Fraction(delta * r, 24) for delta, r in factors), Fraction(0))
    unit_precision = max(precision - shift, Fraction(1))
    unit = PuiseuxSeries.constant(1, unit_precision)
    for delta, r in factors:
        if r:
            unit = mul(unit, rational_pow(pentagonal(delta, unit_precision), r))
    result = mul(PuiseuxSeries.monomial(shift), unit).over(d)
    return result.scale(prefactor).truncate(precision)


def check_positive_definite(rule: LatticeRule) -> None:
    a, b, c = rule.form
    if rule.dim == 1:
        ok = a > 0
    else:
        ok = a > 0 and 4 * a * c - b * b > 0
    if not ok:
        raise IndefiniteFormError(f"lattice rule {rule.name} is not positive definite")


def _box(rule: LatticeRule, precision: Fraction) -> int:
    a, b, c = rule.form
    if rule.dim == 1:
        bound = precision / a
    else:
        # |x|^2 <= 4 c Q / disc and |y|^2 <= 4 a Q / disc
        bound = precision * 4 * max(a, c) / (4 * a * c - b * b)
    return isqrt(ceil(bound)) + 2


def theta_sum(rule: LatticeRule, precision: Precision) -> PuiseuxSeries:
    check_positive_definite(rule)
    precision = Fraction(precision)
    a, b, c = rule.form
    s, t = rule.shift
    size = _box(rule, precision)
    terms: Dict[Fraction, Scalar] = {}
    ys: Iterable[int] = range(-size, size + 1) if rule.dim == 2 else (0,)
    for x in range(-size, size + 1):
        for y in ys:
            u = x + s
            if rule.dim == 1:
                e = a * u * u
            else:
                v = y + t
                e = a * u * u + b * u * v + c * v * v
            if e >= precision:
                continue
            l1, l2 = rule.linear
            phase = rule.values[(l1 * x + l2 * y) % len(rule.values)]
            terms[e] = terms[e] + phase if e in terms else phase
    return PuiseuxSeries.from_terms(terms, precision, rule.d)


def divisor_series(
    k: int,
    weights: Sequence[Union[int, Fraction]],
    precision: Precision,
    constant: Scalar = 0,
    scale: Scalar = 1,
    conjugate: bool = False,
    step: Union[int, Fraction] = 1,
) -> PuiseuxSeries:
    """constant + scale * sum_(n >= 1) sigma_k(n; w) q^(n step)."""
    precision = Fraction(precision)
    step = Fraction(step)
    size = ceil(precision / step)
    table = divisor_table(k, WeightVector.of(*weights), size, conjugate)
    terms: Dict[Fraction, Scalar] = {
        n * step: v for n, v in enumerate(table) if n and v
    }
    body = PuiseuxSeries.from_terms(terms, precision)
    return (body.scale(scale) + constant).truncate(precision)


def eisenstein_series(k: int, precision: Precision) -> PuiseuxSeries:
    """E_k = 1 + a_k sum sigma_(k-1)(n) q^n for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError(f"E_{k} needs an even weight >= 2")
    return divisor_series(k - 1, (1,), precision, 1, eisenstein_constant(k))


def eisenstein_character_series(
    k: int, psi: DirichletCharacter, phi: DirichletCharacter, precision: Precision
) -> PuiseuxSeries:
    """
    E_k^(psi, phi): 1 + (2 / L(1 - k, phi)) E^_k(psi, phi) when psi is trivial,
    2 E^_k(psi, phi) otherwise, where E^_k = sum_e sum_d psi(e) phi(d) d^(k-1) q^(ed).
    """
    precision = Fraction(precision)
    if psi(-1) * phi(-1) != (-1) ** k:
        raise ValueError(
            f"characters {psi.name}, {phi.name} have the wrong parity for weight {k}"
        )
    size = ceil(precision)
    table = eisenstein_kernel_table(k, psi, phi, size)
    kernel = PuiseuxSeries({n: v for n, v in enumerate(table) if n}, 1, precision)
    if psi.is_trivial:
        return kernel.scale(2 / l_value(k, phi)) + 1
    return kernel.scale(2)


def lambert_series(
    k: int, precision: Precision, sign: int = 1, power: int = 1
) -> PuiseuxSeries:
    """
    sum_(n >= 1) n^(k-1) q^n / (1 - sign q^n)^power, for power 1 or 2, expanded
    by the geometric series.
    """
    if power not in (1, 2) or sign not in (1, -1):
        raise ValueError("Lambert kernels take sign +-1 and power 1 or 2")
    size = ceil(Fraction(precision))
    coeffs: Dict[int, Fraction] = {}
    for n in range(1, size):
        weight = Fraction(n) ** (k - 1)
        for m in range(1, (size - 1) // n + 1):
            # x / (1 - s x)^p = sum_m m^(p-1) s^(m-1) x^m
            c = weight * m ** (power - 1) * sign ** (m - 1)
            coeffs[n * m] = coeffs.get(n * m, 0) + c
    return PuiseuxSeries(coeffs, 1, precision)
