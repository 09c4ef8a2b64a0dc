from fractions import Fraction

import pytest

from qforms.core.qseries import PuiseuxSeries
from qforms.hypergeometric.series import (
    HypergeometricError,
    hypergeometric_residual,
    three_f_two_series,
    two_f_one_series,
)
from qforms.hypergeometric.signatures import SIGNATURES, GroupKind, signature

F = Fraction


# check 2F1(a, b; b; x) is the binomial series of (1 - x)^(-a)
def test_two_f_one_binomial():
    series = two_f_one_series(F(1, 2), 3, 3, 5)
    assert series.coefficient_list(5) == [1, F(1, 2), F(3, 8), F(5, 16), F(35, 128)]
    assert series.precision == 5
    assert two_f_one_series(2, 1, 1, 4).coefficient_list(4) == [1, 2, 3, 4]


# check a vanishing upper parameter ends the series
def test_two_f_one_polynomial():
    series = two_f_one_series(-2, 1, 1, 6)
    assert series.coefficient_list(6) == [1, -2, 1, 0, 0, 0]
    assert two_f_one_series(0, 5, 7, 4).coefficient(0) == 1


# check nonpositive integer lower parameters are poles
def test_lower_pole():
    for nu in (0, -2):
        with pytest.raises(HypergeometricError):
            two_f_one_series(1, 1, nu, 4)
    assert two_f_one_series(1, 1, F(-1, 2), 3).coefficient(1) == -2


# check 3F2 arity and the Clausen square 2F1(1/4, 1/4; 1)^2
def test_three_f_two():
    with pytest.raises(HypergeometricError):
        three_f_two_series([1, 2], [3, 4], 4)
    square = two_f_one_series(F(1, 4), F(1, 4), 1, 6) ** 2
    clausen = three_f_two_series([F(1, 2), F(1, 2), F(1, 2)], [1, 1], 6)
    assert square == clausen


# check the series solves its own equation, in x = q
def test_hypergeometric_residual():
    q = PuiseuxSeries({1: 1})
    f = two_f_one_series(F(1, 2), F(1, 2), 1, 10)
    residual = hypergeometric_residual([F(1, 2), F(1, 2)], [1], f, q)
    assert residual.truncate(9).is_zero()
    off = hypergeometric_residual([F(1, 2), F(1, 3)], [1], f, q)
    assert not off.truncate(9).is_zero()


# check the nine signatures and their derived constants
def test_signatures():
    assert len(SIGNATURES) == 9
    assert signature("gamma0_2").rho == 4
    assert signature("gamma0_2").t_star == -64
    assert signature("gamma0_3").t_star == -27
    assert signature("gamma1").rho == 12
    assert signature("gamma1").t_star == -1
    assert signature("iso_2a").ladder_scale == 12
    assert signature("gamma0_4").exponents == (0, 0, 0)
    kinds = [s.kind for s in SIGNATURES.values()]
    assert kinds.count(GroupKind.HECKE) == 3
    assert kinds.count(GroupKind.FRICKE) == 3
    assert kinds.count(GroupKind.ISOSCELES) == 3
    with pytest.raises(KeyError):
        signature("x")


# check the A, B and C parameters at Gamma0(2)
def test_signature_parameters():
    sig = signature("gamma0_2")
    assert sig.a_parameters() == (F(1, 4), F(3, 4), 1)
    assert sig.b_parameters() == (F(1, 4), F(1, 4), 1)
    assert sig.c_parameters() == (F(1, 4), F(1, 4), F(1, 2))
    assert sig.c_parameters("B") == (F(1, 4), F(1, 4), 1)
    assert all(s.is_valid() for s in SIGNATURES.values())
