import pytest

from qforms.hypergeometric.representations import (
    hypergeometric_equation,
    representation_records,
    t_derivative,
    u_hat_consistency,
)
from qforms.hypergeometric.series import HypergeometricError
from qforms.identity.models import Tier
from qforms.identity.services import verify


# check one A, B, t' and u-hat record per group, plus Clausen for Fricke groups
def test_representation_records():
    records = representation_records()
    assert len(records) == 9 * 4 + 3
    assert all(r.tier == Tier.HYPERGEOMETRIC for r in records)
    ids = {r.id for r in records}
    assert "hypergeometric.gamma1.clausen" in ids
    assert "hypergeometric.gamma0_2.clausen" not in ids
    assert "hypergeometric.iso_4a.u-hat" in ids


# check the Hauptmodul derivative and the u-hat ladder at Gamma0(2)
@pytest.mark.parametrize("group", ["gamma0_2", "gamma0_3", "gamma1"])
def test_t_derivative_and_u_hat(group):
    for check in (t_derivative, u_hat_consistency):
        verdicts = check(group, 8)
        assert verdicts
        assert all(v.passed for v in verdicts), verdicts


# check A4 as a 2F1 of the Gamma0(2) Hauptmodul ratio
def test_hecke_two_representation():
    (record,) = [
        r for r in representation_records() if r.id == "hypergeometric.gamma0_2.A"
    ]
    report = verify(record, 8)
    assert report.passed, report.summary()


# check theta3^2 solves the 2F1(1/2, 1/2; 1) equation in lambda
def test_hypergeometric_equation():
    verdicts = hypergeometric_equation(
        ["1/2", "1/2"], [1], "A2", "(div (pow C2 2) (pow A2 2))", 8
    )
    assert all(v.passed for v in verdicts), verdicts
    with pytest.raises(HypergeometricError):
        hypergeometric_equation(["1/2"], [1], "A2", "C2", 8)
