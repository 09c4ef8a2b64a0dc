from fractions import Fraction

import pytest
from pydantic import ValidationError

from qforms.identity.catalog import VerificationConfigError
from qforms.identity.models import CountingOracle, CountKind, Tier
from qforms.identity.services import (
    expand,
    find_record,
    record_precision,
    verify,
    verify_agm,
    verify_chazy,
    verify_counting,
    verify_system,
)

from ..helpers import make_record


# check two equal sides pass
def test_verify_equal():
    report = verify(make_record(equal=["E4", "(add 1 (mul 240 (lambert 4)))"]), 10)
    assert report.passed
    assert report.error is None
    assert report.precision == 10
    assert report.first_failure is None


# check the first differing coefficient is reported
def test_verify_equal_failure():
    report = verify(make_record(equal=["E4", "E6"]), 10)
    assert not report.passed
    failure = report.first_failure
    assert failure.exponent == 1
    assert (failure.lhs, failure.rhs) == ("240", "-504")


# check residual records
def test_verify_residuals():
    report = verify(make_record(residuals=["(sub (pow A2 2) (pow theta3 4))"]), 10)
    assert report.passed
    bad = verify(make_record(residuals=["(sub E4 1)"]), 10)
    assert not bad.passed
    assert bad.first_failure.lhs == "240"


# check coefficient lists
def test_verify_coefficients():
    good = make_record(coefficients={"expr": "theta3", "values": [1, 2, 0, 0, 2]})
    assert verify(good).passed
    wrong = make_record(coefficients={"expr": "theta3", "values": [1, 2, 0, 1, 2]})
    report = verify(wrong)
    assert not report.passed
    assert report.first_failure.exponent == 3
    assert (report.first_failure.lhs, report.first_failure.rhs) == ("0", "1")


# check coefficients over Q(sqrt 2) render with w
def test_verify_quadratic_coefficients():
    record = make_record(
        coefficients={
            "expr": "C4",
            "values": ["0"],
            "start": "1/4",
        },
        d=2,
    )
    report = verify(record)
    assert not report.passed
    assert report.first_failure.lhs == "2*w"


# check evaluation errors land on the report
def test_verify_error():
    report = verify(make_record(equal=["(div E4 (sub E4 E4))", "E4"]), 5)
    assert not report.passed
    assert report.error.startswith("ZeroDivisionError")
    assert report.summary()["error"] == report.error


# check the precision has to be positive
def test_record_precision():
    record = make_record(equal=["E4", "E4"])
    assert record_precision(record) > 0
    assert record_precision(record, 7) == 7
    assert record_precision(make_record(equal=["E4", "E4"], precision=12)) == 12
    assert record_precision(record, "1/2") == Fraction(1, 2)
    with pytest.raises(VerificationConfigError):
        record_precision(record, 0)
    with pytest.raises(VerificationConfigError):
        verify(record, -3)


# check a record has exactly one kind of check
def test_record_validation():
    with pytest.raises(ValidationError):
        make_record()
    with pytest.raises(ValidationError):
        make_record(equal=["E4", "E4"], residuals=["E4"])
    with pytest.raises(ValidationError):
        make_record(equal=["E4"])
    with pytest.raises(ValidationError):
        make_record(equal=["E4", "E4"], tier="bronze")
    assert make_record(check="agm").kind == "check"


# check millis only appears when timings are asked for
def test_summary_timings():
    report = verify(make_record(equal=["E4", "E4"]), 5)
    assert report.millis is not None
    assert "millis" not in report.summary()
    assert report.summary(timings=True)["millis"] == report.millis
    assert report.summary() == {
        "id": "test.record",
        "tier": "expansion",
        "citation": "test record",
        "pass": True,
    }


# check a catalog record and the expand helper
def test_spanning_record(catalog):
    report = verify(find_record("spanning.A4sq"), 10)
    assert report.passed, report.summary()
    assert expand("A4", 3).coefficient_list(3) == [1, 12, -60]
    with pytest.raises(VerificationConfigError):
        find_record("spanning.nope")


# check the named entry points
def test_verify_system():
    report = verify_system("pqr", 8)
    assert report.id == "system.pqr"
    assert report.passed, report.summary()
    assert verify_system("gamma0_3", 8).passed


def test_verify_chazy():
    report = verify_chazy("4", 8)
    assert report.id == "chazy.gamma0_2"
    assert report.passed, report.summary()
    assert verify_chazy("gamma1", 8).passed


def test_verify_counting():
    oracle = CountingOracle(kind=CountKind.SQUARES, s=2, max_n=10)
    report = verify_counting(oracle)
    assert report.id == "counting.squares.s2"
    assert report.tier == Tier.COUNTING
    assert report.passed
    assert len(report.checks) == 3


def test_verify_agm():
    report = verify_agm(8)
    assert report.id == "agm"
    assert report.passed, report.summary()
    assert len(report.checks) >= 12


# check verdicts do not move when the precision is doubled
@pytest.mark.parametrize(
    "record_id", ["golden.A4", "spanning.A4sq", "system.gamma0_3", "halphen.iso_2a"]
)
def test_verdict_stable_under_doubling(catalog, record_id):
    record = find_record(record_id)
    single, double = verify(record, 8), verify(record, 16)
    assert single.passed and double.passed, (single.summary(), double.summary())
    assert [c.label for c in single.checks] == [c.label for c in double.checks]


def test_failure_stable_under_doubling():
    record = make_record(equal=["E4", "E6"])
    single, double = verify(record, 8), verify(record, 16)
    assert not single.passed and not double.passed
    assert single.first_failure == double.first_failure
