from fractions import Fraction

import pytest

from qforms.core.chazy import P3, P4, P12
from qforms.core.qseries import PuiseuxSeries
from qforms.hypergeometric.operators import (
    PFOperator,
    chazy_residual,
    general_polynomial,
    theorem_general_coeffs,
    u_hat_ladder,
)
from qforms.hypergeometric.ratfunc import RationalFunctionInT
from qforms.hypergeometric.series import HypergeometricError

F = Fraction
T = RationalFunctionInT.variable()


# check the field operations stay reduced
def test_ratfunc_arithmetic():
    f = (T + 1) / (T * T - 1)
    assert f == 1 / (T - 1)
    assert f - f == 0
    assert (f * (T - 1)) == 1
    assert (T**-2) * T * T == 1
    assert 2 + T == T + 2
    assert 1 - T == -(T - 1)
    with pytest.raises(ZeroDivisionError):
        f / 0
    with pytest.raises(ZeroDivisionError):
        RationalFunctionInT(1, 0)


# check differentiation, rescaling and evaluation
def test_ratfunc_calculus():
    f = 1 / (T + 2)
    assert f.derivative() == -1 / ((T + 2) ** 2)
    assert (T**3).derivative() == 3 * T * T
    assert f.rescale(2) == F(1, 2) / (T + 1)
    assert f.at(2) == F(1, 4)
    with pytest.raises(ZeroDivisionError):
        f.at(-2)


# check substitution of a q-series
def test_ratfunc_on_series():
    q = PuiseuxSeries({1: 1}, 1, 6)
    geometric = (1 / (1 - T)).on_series(q)
    assert geometric.coefficient_list(6) == [1, 1, 1, 1, 1, 1]


# check Q for the Gamma0(2) exponents and the start of the ladder
def test_pf_operator():
    op = PFOperator(F(1, 2), 0, 0, t_star=-64)
    assert op.Q == 4 / (T * T * (T + 64))
    assert op.P == F(1, 2) / T + F(1, 2) / (T + 64)
    ladder = u_hat_ladder(op)
    assert sorted(ladder) == [4, 6, 8]
    assert ladder[4] == -op.Q
    assert ladder[6] == ladder[4].derivative() + 2 * op.P * ladder[4]
    assert not op.is_degenerate()
    assert op.exponents == (F(1, 2), 0, 0)


# check a singular point at 0 and bad ladder lengths are refused
def test_pf_operator_errors():
    with pytest.raises(HypergeometricError):
        PFOperator(F(1, 2), 0, 0, t_star=0)
    op = PFOperator(F(1, 2), 0, 0)
    for k_max in (2, 7):
        with pytest.raises(HypergeometricError):
            u_hat_ladder(op, k_max)


# check Q vanishes when gamma = +-(1 - alpha - beta)
def test_degenerate_operator():
    assert PFOperator(F(1, 4), F(1, 4), F(1, 2)).is_degenerate()
    assert PFOperator(F(1, 4), F(1, 4), F(-1, 2)).is_degenerate()


# check the Hecke Chazy equations hold for their operators at any t*
@pytest.mark.parametrize("t_star", [-1, -64, -27, 5])
def test_chazy_residual(t_star):
    assert chazy_residual(PFOperator(F(1, 2), 0, 0, t_star), P4).is_zero()
    assert chazy_residual(PFOperator(F(1, 3), 0, 0, t_star), P3).is_zero()
    assert not chazy_residual(PFOperator(F(1, 2), 0, 0, t_star), P12).is_zero()


# check the classical Chazy XII equation at the full modular group
def test_chazy_residual_modular():
    assert chazy_residual(PFOperator(F(1, 3), F(1, 2), 0), P12).is_zero()


# check the weight-24 coefficients at (1/2, 0, 0)
def test_theorem_general_coeffs():
    coeffs = theorem_general_coeffs(F(1, 2), 0, 0)
    assert tuple(coeffs) == (0, F(1, 32), 0, F(-1, 32), F(1, 4), 0)
    assert coeffs.c86 == F(1, 32)


# check the coefficients are symmetric in alpha and beta
@pytest.mark.parametrize(
    "a,b,g",
    [(F(1, 3), F(1, 2), 0), (F(1, 5), F(2, 7), F(1, 3)), (F(-3, 4), F(5, 6), F(1, 9))],
)
def test_alpha_beta_symmetry(a, b, g):
    assert theorem_general_coeffs(a, b, g) == theorem_general_coeffs(b, a, g)


# check the weight-24 equation holds off the Hecke groups
@pytest.mark.parametrize(
    "triple",
    [(F(1, 3), F(1, 2), 0), (F(1, 4), F(1, 4), 0), (F(1, 5), F(2, 7), F(1, 3))],
)
def test_general_polynomial(triple):
    poly = general_polynomial(*triple)
    assert poly.weight == 24
    assert chazy_residual(PFOperator(*triple), poly).is_zero()
