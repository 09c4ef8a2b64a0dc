from fractions import Fraction

import pytest

from qforms.core.chazy import (
    CHAZY_POLYNOMIALS,
    P2,
    P3,
    P4,
    P8,
    P12,
    ChazyPolynomial,
    ChazyPolynomialError,
    polynomial,
    primitive,
    to_ladder,
)


# check the weights of the shipped polynomials
def test_weights():
    weights = {name: p.weight for name, p in CHAZY_POLYNOMIALS.items()}
    assert weights == {"p4": 12, "p3": 20, "p2": 12, "p12": 8, "p8": 12, "p6": 12}
    assert P2 == P4


# check mixed weights are refused
def test_inhomogeneous():
    mixed = ChazyPolynomial({(1, 0, 0): 1, (0, 1, 0): 1}, "mixed")
    assert not mixed.is_homogeneous()
    with pytest.raises(ChazyPolynomialError):
        mixed.weight
    with pytest.raises(ChazyPolynomialError):
        to_ladder(mixed, 4)
    with pytest.raises(ChazyPolynomialError):
        ChazyPolynomial({}).evaluate({4: 1, 6: 1, 8: 1})


# check the keyword builder
def test_polynomial_builder():
    p = polynomial("x", u4u8=2, u6u6=-1)
    assert p.terms == {(1, 0, 1): 2, (0, 2, 0): -1}
    assert p.weight == 12


# check the ladder vectors for signatures 4 and 3
def test_to_ladder():
    assert to_ladder(P4, 4) == polynomial("q", u4u8=2, u6u6=-2, u4u4u4=1)
    assert to_ladder(P3, 3) == polynomial(
        "c",
        u4u8u8=9,
        u6u6u8=-9,
        u4u4u4u8=24,
        u4u4u6u6=-15,
        u4u4u4u4u4=16,
    )


# check scaling to coprime integers keeps the sign
def test_primitive():
    p = ChazyPolynomial({(0, 0, 1): Fraction(-3, 4), (2, 0, 0): Fraction(9, 2)})
    assert primitive(p).terms == {(0, 0, 1): -1, (2, 0, 0): 6}


# check proportionality and scaling
def test_proportional_to():
    assert P4.scale(3).proportional_to(P4) == 3
    assert P8.proportional_to(P4) is None
    assert P12.proportional_to(P4) is None


# check evaluation on plain numbers and the sympy round trip
def test_evaluate_and_sympy():
    assert P12.evaluate({4: 1, 6: 0, 8: -24}) == 0
    assert P4.evaluate({4: 1, 6: 3, 8: 1}) == 1 - 9 + 8
    assert ChazyPolynomial.from_sympy(P3.as_sympy()) == P3
    assert P12.render() == "(24)*u4^2 + (1)*u8"
