import time
from fractions import Fraction
from typing import List, Optional

from loguru import logger

from qforms import settings
from qforms.core.arithmetic import ArithmeticInputError
from qforms.core.chazy import ChazyPolynomialError
from qforms.core.qseries import PuiseuxSeries, SeriesError
from qforms.forms.expressions import Evaluator, ExpressionSyntaxError
from qforms.forms.kernels import IndefiniteFormError
from qforms.forms.registry import UnknownFormError, eval_form
from qforms.helpers import compare, judge, render_coefficient, split_parts
from qforms.hypergeometric.series import HypergeometricError

from .builtins import BUILTINS
from .catalog import VerificationConfigError, load_catalog
from .models import (
    CountingOracle,
    FirstFailure,
    IdentityRecord,
    ResidualVerdict,
    Tier,
    VerdictReport,
)

# failures of one record; anything else is a bug and propagates
RECORD_ERRORS = (
    SeriesError,
    ArithmeticInputError,
    HypergeometricError,
    UnknownFormError,
    ExpressionSyntaxError,
    ChazyPolynomialError,
    IndefiniteFormError,
    ValueError,
    ZeroDivisionError,
)

CHAZY_ALIASES = {"4": "gamma0_2", "3": "gamma0_3", "2": "gamma0_4"}


def default_precision(tier: Tier) -> int:
    if tier == Tier.HYPERGEOMETRIC:
        return settings.QFORMS_HYPERGEOMETRIC_PRECISION
    if tier == Tier.COUNTING:
        return settings.QFORMS_COUNTING_MAX_N
    return settings.QFORMS_PRECISION


def record_precision(record: IdentityRecord, precision=None) -> Fraction:
    """An explicit override, else the record's own, else the tier default."""
    if precision is None:
        precision = record.precision or default_precision(record.tier)
    precision = Fraction(precision)
    if precision <= 0:
        raise VerificationConfigError(f"precision must be positive, got {precision}")
    return precision


def expand(text: str, precision, d: int = 0) -> PuiseuxSeries:
    """A registry name or a prefix expression, to O(q^precision)."""
    return Evaluator(eval_form, d)(text, precision)


def _sides(
    record: IdentityRecord, lhs: PuiseuxSeries, rhs: PuiseuxSeries, label: str
) -> List:
    if record.split or record.d:
        return list(zip(split_parts(lhs, label), split_parts(rhs, label)))
    return [((label, lhs), (label, rhs))]


def _check_equal(record: IdentityRecord, precision: Fraction) -> List[ResidualVerdict]:
    series = [expand(text, precision, record.d) for text in record.equal]
    verdicts = []
    for i, other in enumerate(series[1:], start=2):
        for (label, lhs), (_, rhs) in _sides(
            record, series[0], other, f"side 1 = side {i}"
        ):
            verdicts.append(compare(label, lhs, rhs, precision))
    return verdicts


def _check_residuals(
    record: IdentityRecord, precision: Fraction
) -> List[ResidualVerdict]:
    verdicts = []
    for i, text in enumerate(record.residuals, start=1):
        residual = expand(text, precision, record.d)
        for label, part in split_parts(residual, f"residual {i}"):
            verdicts.append(judge(label, part, precision))
    return verdicts


def _check_coefficients(record: IdentityRecord) -> List[ResidualVerdict]:
    check = record.coefficients
    assert check
    bound = check.start + check.step * len(check.values)
    series = expand(check.expr, bound, record.d)
    for i, expected in enumerate(check.values):
        exponent = check.start + check.step * i
        found = series.coefficient(exponent)
        if found != expected:
            logger.error(
                f"{record.id}: q^{exponent} coefficient is "
                f"{render_coefficient(found)}, expected {expected}"
            )
            failure = FirstFailure(exponent, render_coefficient(found), str(expected))
            return [ResidualVerdict("coefficients", False, failure)]
    return [ResidualVerdict("coefficients", True)]


def _run(record: IdentityRecord, precision: Fraction) -> List[ResidualVerdict]:
    if record.kind == "equal":
        return _check_equal(record, precision)
    if record.kind == "residuals":
        return _check_residuals(record, precision)
    if record.kind == "coefficients":
        return _check_coefficients(record)
    assert record.check
    return BUILTINS[record.check](precision=precision, d=record.d, **record.params)


def verify(record: IdentityRecord, precision=None) -> VerdictReport:
    """
    Evaluate one record. A pass means every residual vanishes to O(q^P); errors
    raised while evaluating are reported on the record, not raised.
    """
    precision = record_precision(record, precision)
    start = time.perf_counter()
    checks: List[ResidualVerdict] = []
    error = None
    try:
        checks = _run(record, precision)
    except RECORD_ERRORS as exc:
        error = f"{type(exc).__name__}: {exc}"
        logger.error(f"{record.id}: {error}")
    millis = int((time.perf_counter() - start) * 1000)
    logger.debug(f"{record.id} at O(q^{precision}) took {millis} ms")
    return VerdictReport(
        id=record.id,
        tier=record.tier,
        citation=record.citation,
        precision=precision,
        checks=checks,
        error=error,
        millis=millis,
    )


def find_record(record_id: str, path: Optional[str] = None) -> IdentityRecord:
    for record in load_catalog(path):
        if record.id == record_id:
            return record
    raise VerificationConfigError(f"no catalog record {record_id!r}")


def verify_system(group: str, precision=None) -> VerdictReport:
    """A nine-group system, or the named ones: 'pqr' and 'theta'."""
    return verify(find_record(f"system.{group}"), precision)


def verify_chazy(group: str, precision=None) -> VerdictReport:
    """A group's Chazy record; 4, 3 and 2 name the three Hecke groups."""
    gid = CHAZY_ALIASES.get(str(group), str(group))
    return verify(find_record(f"chazy.{gid}"), precision)


def verify_counting(oracle: CountingOracle) -> VerdictReport:
    record = IdentityRecord(
        id=f"counting.{oracle.kind.value}.s{oracle.s}",
        tier=Tier.COUNTING,
        topic=f"counting-{oracle.kind.value}",
        citation=f"{oracle.label}(n) three ways for n <= {oracle.max_n}",
        check="counting",
        params={"kind": oracle.kind.value, "s": oracle.s},
    )
    return verify(record, oracle.max_n)


def verify_agm(precision=None) -> VerdictReport:
    """Every agm-tier record, merged into one report."""
    reports = [verify(r, precision) for r in load_catalog() if r.tier == Tier.AGM]
    checks = [
        ResidualVerdict(f"{report.id} {c.label}", c.passed, c.first_failure)
        for report in reports
        for c in report.checks
    ]
    errors = [f"{r.id}: {r.error}" for r in reports if r.error]
    return VerdictReport(
        id="agm",
        tier=Tier.AGM,
        citation="quadratic, quartic and cubic AGM identities",
        precision=reports[0].precision if reports else None,
        checks=checks,
        error="; ".join(errors) or None,
        millis=sum(r.millis or 0 for r in reports),
    )
