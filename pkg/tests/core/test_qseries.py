from fractions import Fraction

import pytest

from qforms.core.qseries import (
    CompositionDomainError,
    ExponentDenominatorError,
    FieldMismatchError,
    PrecisionError,
    PuiseuxSeries,
    QuadExtScalar,
    RootExtractionError,
    SeriesError,
    compose,
    derive,
    invert,
    rational_pow,
    substitute_power,
)

from ..helpers import get_random_series

F = Fraction


def one_minus_q(precision=None):
    return PuiseuxSeries({0: 1, 1: -1}, 1, precision)


# check that opposite terms cancel exactly
def test_add_cancels():
    total = PuiseuxSeries({0: 1, 1: 1}) + one_minus_q()
    assert total == 2
    assert total.is_exact()


# check that a sum is only trusted to the smaller precision
def test_add_takes_smaller_precision(rng):
    a = get_random_series(rng, precision=10)
    b = get_random_series(rng, precision=5)
    assert (a + b).precision == 5
    assert (a - b).precision == 5


# check (1 + q)(1 - q) = 1 - q^2 with no truncation
def test_mul_exact():
    product = PuiseuxSeries({0: 1, 1: 1}) * one_minus_q()
    assert product == PuiseuxSeries({0: 1, 2: -1})
    assert product.precision is None


# check multiplication distributes over addition
def test_ring_axioms(rng):
    a, b, c = (get_random_series(rng, precision=8) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


# check the geometric series
def test_invert_geometric():
    inverse = invert(one_minus_q(10))
    assert inverse.coefficient_list(10) == [1] * 10
    assert inverse.precision == 10


# check inverting q u(q) gives a pole of order one
def test_invert_shifts_valuation():
    inverse = invert(PuiseuxSeries({1: 1, 2: 1}, 1, 10))
    assert inverse.leading() == (F(-1), 1)
    assert inverse.coefficient_list(3) == [-1, 1, -1]
    assert inverse.precision == 8


# check a unit times its inverse is 1 to the working precision
def test_invert_roundtrip(rng):
    a = get_random_series(rng, precision=12, unit=True)
    assert a * invert(a) == 1


# check zero and untruncated multi-term series cannot be inverted
def test_invert_errors():
    with pytest.raises(ZeroDivisionError):
        invert(PuiseuxSeries.zero(5))
    with pytest.raises(PrecisionError):
        invert(one_minus_q())


# check the binomial series for (1 + q)^(1/2)
def test_rational_pow_square_root():
    root = rational_pow(PuiseuxSeries({0: 1, 1: 1}, 1, 6), F(1, 2))
    assert root.coefficient_list(6) == [
        1,
        F(1, 2),
        F(-1, 8),
        F(1, 16),
        F(-5, 128),
        F(7, 256),
    ]


# check fractional powers of monomials and constants
def test_rational_pow_monomials():
    assert PuiseuxSeries.monomial(1) ** F(1, 2) == PuiseuxSeries.monomial(F(1, 2))
    assert PuiseuxSeries.constant(1) ** F(1, 2) == 1
    assert PuiseuxSeries.monomial(2, 9) ** F(-1, 2) == PuiseuxSeries.monomial(
        -1, F(1, 3)
    )


# check cube then cube root returns the series
def test_rational_pow_roundtrip(rng):
    a = get_random_series(rng, precision=10)
    a = a - a.coefficient(0) + 1
    assert rational_pow(a**3, F(1, 3)) == a


# check a leading coefficient with no rational root
def test_rational_pow_needs_root():
    with pytest.raises(RootExtractionError):
        PuiseuxSeries.constant(2) ** F(1, 2)
    root = PuiseuxSeries.constant(2, None, 2) ** F(1, 2)
    assert root.coefficient(0) == QuadExtScalar(0, 1, 2)


# check q d/dq on constants and fractional exponents
def test_derive():
    assert derive(PuiseuxSeries.constant(5)).is_zero()
    assert derive(PuiseuxSeries.monomial(F(1, 2))) == PuiseuxSeries.monomial(
        F(1, 2), F(1, 2)
    )
    assert derive(PuiseuxSeries({0: 1, 1: 2, 3: 1}, 1, 5)).coefficient_list(5) == [
        0,
        2,
        0,
        3,
        0,
    ]


# check q -> q^m scales exponents and precision
def test_substitute_power():
    a = PuiseuxSeries({0: 1, 1: 1}, 1, 5)
    assert substitute_power(a, 1) is a
    doubled = substitute_power(a, 2)
    assert doubled == PuiseuxSeries({0: 1, 2: 1}, 1, 10)
    assert doubled.precision == 10
    halved = substitute_power(a, F(1, 2))
    assert halved.coefficient(F(1, 2)) == 1
    assert halved.precision == F(5, 2)


# check nonpositive substitution powers are rejected
def test_substitute_power_errors():
    with pytest.raises(SeriesError):
        substitute_power(one_minus_q(4), 0)


# check 1/(1 - x) composed with q
def test_compose_geometric():
    f = invert(one_minus_q(8))
    result = compose(f, PuiseuxSeries.monomial(1))
    assert result.coefficient_list(8) == [1] * 8
    assert result.precision == 8


# check composing with the zero series keeps only the constant term
def test_compose_zero_inner():
    f = PuiseuxSeries({0: 3, 1: 1, 2: 5})
    assert compose(f, PuiseuxSeries.zero()) == 3


# check the domain of composition
def test_compose_errors():
    with pytest.raises(CompositionDomainError):
        compose(PuiseuxSeries.monomial(F(1, 2)), PuiseuxSeries.monomial(1))
    with pytest.raises(CompositionDomainError):
        compose(one_minus_q(), PuiseuxSeries({0: 1, 1: 1}, 1, 5))


# check that results at precision P agree with results at 2P below P
def test_precision_is_honest(rng):
    a = get_random_series(rng, precision=24)
    a = a - a.coefficient(0) + 1
    b = get_random_series(rng, precision=24)
    low = a.truncate(12)
    assert invert(a).truncate(12) == invert(low)
    assert (a * b).truncate(12) == low * b.truncate(12)
    assert (a ** F(3, 2)).truncate(12) == low ** F(3, 2)


# check coefficients beyond the precision are refused
def test_coefficient_beyond_precision():
    with pytest.raises(PrecisionError):
        one_minus_q(3).coefficient(3)
    assert one_minus_q(3).coefficient(F(1, 2)) == 0


# check the exponent denominator bound
def test_exponent_denominator_bound():
    with pytest.raises(ExponentDenominatorError):
        PuiseuxSeries({1: 1}, 49)
    assert PuiseuxSeries({2: 1}, 48).den == 24


# check exact arithmetic in Q(sqrt(d))
def test_quadratic_scalars():
    w = QuadExtScalar(0, 1, -3)
    assert w**2 == -3
    x = QuadExtScalar(1, 1, 2)
    assert x * x.inverse() == 1
    assert x.norm() == -1
    assert x.conjugate() == QuadExtScalar(1, -1, 2)
    assert QuadExtScalar(8, 0, 2).root(2) == QuadExtScalar(0, 2, 2)
    assert QuadExtScalar(3, 2, 2).root(2) == QuadExtScalar(1, 1, 2)


# check the ASCII rendering of field elements
def test_quadratic_render():
    assert QuadExtScalar(1, -2, -3).render() == "1-2*w"
    assert QuadExtScalar(F(1, 2), 3, 2).render() == "1/2+3*w"
    assert QuadExtScalar(0, 3, 2).render() == "3*w"
    assert QuadExtScalar(F(-1, 2), 0, 2).render() == "-1/2"


# check discriminants must be square-free and fields must match
def test_field_errors():
    with pytest.raises(FieldMismatchError):
        QuadExtScalar(1, 1, 4)
    with pytest.raises(FieldMismatchError):
        QuadExtScalar(1, 1, 1)
    with pytest.raises(FieldMismatchError):
        QuadExtScalar(0, 1, 0)
    a = PuiseuxSeries.constant(QuadExtScalar(0, 1, 2), None, 2)
    b = PuiseuxSeries.constant(QuadExtScalar(0, 1, -1), None, -1)
    with pytest.raises(FieldMismatchError):
        a + b
    with pytest.raises(FieldMismatchError):
        a.over(0)


# check rational and radical parts split cleanly
def test_split_parts():
    s = PuiseuxSeries({0: QuadExtScalar(1, 2, 2), 1: 3}, 1, 4, 2)
    assert s.rational_part() == PuiseuxSeries({0: 1, 1: 3}, 1, 4)
    assert s.radical_part() == PuiseuxSeries({0: 2}, 1, 4)
    assert not s.is_rational()
    assert (s - s.radical_part().over(2) * QuadExtScalar(0, 1, 2)).is_rational()


def unit_series(rng, precision=12):
    """1 + (random terms), so every rational power has rational coefficients."""
    tail = get_random_series(rng, precision).coefficient_list(precision)
    coeffs = {n: c for n, c in enumerate(tail) if n}
    coeffs[0] = F(1)
    return PuiseuxSeries(coeffs, 1, precision)


# check q d/dq is a derivation
def test_derive_leibniz(rng):
    for _ in range(5):
        f = get_random_series(rng, 10)
        g = get_random_series(rng, 10, den=2)
        assert derive(f * g) == derive(f) * g + f * derive(g)
        assert derive(f + g) == derive(f) + derive(g)


# check f^a f^b = f^(a + b), including a valuation carried through the powers
@pytest.mark.parametrize(
    "a,b", [(F(1, 2), F(1, 2)), (F(1, 3), F(-5, 4)), (F(-2), F(7, 6)), (3, F(-3))]
)
def test_rational_pow_exponent_law(rng, a, b):
    f = unit_series(rng)
    assert rational_pow(f, a) * rational_pow(f, b) == rational_pow(f, a + b)
    shifted = PuiseuxSeries({2: 1}, 1, None) * f
    assert rational_pow(shifted, a) * rational_pow(shifted, b) == rational_pow(
        shifted, a + b
    )


# check the square-free test on discriminants with and without square factors
@pytest.mark.parametrize(
    "d,ok", [(6, True), (-7, True), (5, True), (12, False), (-8, False), (18, False)]
)
def test_discriminant_square_free(d, ok):
    if ok:
        assert QuadExtScalar(0, 1, d) ** 2 == d
    else:
        with pytest.raises(FieldMismatchError):
            QuadExtScalar(0, 1, d)
