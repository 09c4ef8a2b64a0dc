from fractions import Fraction

import pytest

from qforms.core.arithmetic import character
from qforms.core.qseries import PuiseuxSeries, QuadExtScalar
from qforms.forms.kernels import (
    IndefiniteFormError,
    check_positive_definite,
    divisor_series,
    eisenstein_character_series,
    eisenstein_series,
    eta_product,
    lambert_series,
    pentagonal,
    theta_sum,
)
from qforms.forms.models import LatticeRule
from qforms.forms.registry import LATTICES

F = Fraction


# check Euler's pentagonal expansion
def test_pentagonal():
    assert pentagonal(1, 8).coefficient_list(8) == [1, -1, -1, 0, 0, 1, 0, 1]
    assert pentagonal(2, 6).coefficient_list(6) == [1, 0, -1, 0, -1, 0]


# check Delta as the 24th power of eta
def test_eta_product_delta():
    delta = eta_product([(1, 24)], 7)
    assert delta.coefficient_list(7) == [0, 1, -24, 252, -1472, 4830, -6048]
    assert delta.precision == 7


# check the q^(1/24) shift of a single eta
def test_eta_product_fractional_shift():
    eta = eta_product([(1, 1)], 3)
    assert eta.leading() == (F(1, 24), 1)
    assert eta.coefficient(F(25, 24)) == -1
    assert eta.coefficient(F(49, 24)) == -1


# check the prefactor and the field of an eta quotient
def test_eta_product_prefactor():
    c4 = eta_product([(2, 4), (1, -2)], 3, QuadExtScalar(0, 2, 2), 2)
    assert c4.d == 2
    assert c4.leading() == (F(1, 4), QuadExtScalar(0, 2, 2))


# check the one-dimensional theta sums
def test_theta_nulls():
    theta3 = theta_sum(LATTICES["theta3"], 10)
    assert dict(theta3.terms()) == {0: 1, 1: 2, 4: 2, 9: 2}
    theta4 = theta_sum(LATTICES["theta4"], 10)
    assert dict(theta4.terms()) == {0: 1, 1: -2, 4: 2, 9: -2}
    low = theta3.truncate(9) + theta4.truncate(9)
    assert low == PuiseuxSeries({0: 2, 4: 4}, 1, 9)
    theta2 = theta_sum(LATTICES["theta2"], 10)
    assert theta2.coefficient(F(1, 4)) == 2
    assert theta2.coefficient(F(9, 4)) == 2
    assert theta2.coefficient(F(25, 4)) == 2


# check the hexagonal lattice sums
def test_hexagonal_theta():
    a3 = theta_sum(LATTICES["A3"], 8)
    assert a3.coefficient_list(8) == [1, 6, 0, 6, 6, 0, 0, 12]
    b3 = theta_sum(LATTICES["B3"], 5)
    assert b3.d == -3
    assert b3.coefficient_list(5) == [1, -3, 0, 6, -3]
    c3 = theta_sum(LATTICES["C3"], 3)
    assert c3.leading() == (F(1, 3), 3)


# check indefinite forms are refused
def test_indefinite_form():
    bad = LatticeRule("bad", 2, (1, 3, 1))
    with pytest.raises(IndefiniteFormError):
        check_positive_definite(bad)
    with pytest.raises(IndefiniteFormError):
        theta_sum(LatticeRule("neg", 1, (-1, 0, 0)), 5)


# check weighted divisor series
def test_divisor_series():
    a3 = divisor_series(0, (0, 1, -1), 8, 1, 6)
    assert a3.coefficient_list(8) == [1, 6, 0, 6, 6, 0, 0, 12]
    stepped = divisor_series(1, (1,), 4, step=F(1, 2))
    assert stepped.coefficient(F(1, 2)) == 1
    assert stepped.coefficient(1) == 3


# check level-one Eisenstein series and their domain
def test_eisenstein_series():
    assert eisenstein_series(4, 6).coefficient_list(6) == [
        1,
        240,
        2160,
        6720,
        17520,
        30240,
    ]
    assert eisenstein_series(2, 5).coefficient_list(5) == [1, -24, -72, -96, -168]
    with pytest.raises(ValueError):
        eisenstein_series(3, 5)
    with pytest.raises(ValueError):
        eisenstein_series(0, 5)


# check Eisenstein series with characters
def test_eisenstein_character_series():
    e3 = eisenstein_character_series(3, character("1"), character("chi-4"), 4)
    assert e3.coefficient_list(4) == [1, -4, -4, 32]
    with pytest.raises(ValueError):
        eisenstein_character_series(4, character("1"), character("chi-4"), 4)


# check Lambert series
def test_lambert_series():
    assert lambert_series(1, 6).coefficient_list(6) == [0, 1, 2, 2, 3, 2]
    e4 = lambert_series(4, 6).scale(240) + 1
    assert e4 == eisenstein_series(4, 6)
    with pytest.raises(ValueError):
        lambert_series(1, 6, power=3)
