"""
Hypergeometric representations of the weight-one forms of the nine triangle
groups, checked as q-series identities by composing 2F1 (or the Clausen 3F2)
with the Hauptmodul ratio C^rho / A^rho, which has positive order at infinity.

The t-derivative and u-hat checks tie the Picard-Fuchs operator of a group to
its q-series: with t = -t* C^rho / B^rho,

    t' = (-t*/width) A^(rho(1 - alpha)) B^(-rho(1 + beta)) C^rho
    -Q(t) t'^2 = u4 / (width rho)^2
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from loguru import logger

from qforms import settings
from qforms.core.qseries import PuiseuxSeries, derive
from qforms.forms.expressions import Evaluator
from qforms.forms.groups import GROUP_FORMS, GroupForms
from qforms.forms.registry import eval_form
from qforms.helpers import judge, split_parts
from qforms.identity.ladder import GroupSeries
from qforms.identity.models import IdentityRecord, ResidualVerdict, Tier

from .operators import PFOperator
from .series import HypergeometricError, hypergeometric_residual
from .signatures import GroupKind

Number = Union[int, Fraction, str]


def _verdicts(
    label: str, residual: PuiseuxSeries, precision: Fraction
) -> List[ResidualVerdict]:
    parts = split_parts(residual, label)
    return [judge(part_label, part, precision) for part_label, part in parts]


def hauptmodul_series(g: GroupSeries) -> PuiseuxSeries:
    """t = -t* C^rho / B^rho."""
    return (g.c / g.b).scale(-g.signature.t_star)


def t_derivative(
    group: str, precision: Fraction, d: int = 0
) -> List[ResidualVerdict]:
    g = GroupSeries(group, precision)
    sig = g.signature
    alpha, beta, _ = sig.exponents
    product = g.power("a", 1 - alpha) * g.power("b", -(1 + beta)) * g.c
    residual = derive(hauptmodul_series(g)) - product.scale(-sig.t_star / sig.width)
    return _verdicts(f"{group} t'", residual, precision)


def u_hat_consistency(
    group: str, precision: Fraction, d: int = 0
) -> List[ResidualVerdict]:
    g = GroupSeries(group, precision)
    sig = g.signature
    op = PFOperator(*sig.exponents, t_star=sig.t_star)
    t = hauptmodul_series(g)
    dt = derive(t)
    u4 = eval_form(f"{group}.u4", precision)
    residual = -(op.Q.on_series(t) * dt * dt) - u4.scale(1 / sig.ladder_scale**2)
    label = f"{group} -Q(t) t'^2 - u4/{sig.ladder_scale}^2"
    return _verdicts(label, residual, precision)


def hypergeometric_equation(
    upper: Sequence[Number],
    lower: Sequence[Number],
    f: str,
    x: str,
    precision: Fraction,
    d: int = 0,
) -> List[ResidualVerdict]:
    """f, as a function of x, lies in the solution space of the equation."""
    upper = [Fraction(str(a)) for a in upper]
    lower = [Fraction(str(b)) for b in lower]
    if len(upper) != len(lower) + 1:
        raise HypergeometricError(
            f"{len(upper)} upper and {len(lower)} lower parameters do not match"
        )
    evaluate = Evaluator(eval_form, d)
    # x d/dx and the product by x shift the precision by the order of x
    working = precision + settings.QFORMS_PRECISION_SLACK
    f_series = evaluate(f, working)
    x_series = evaluate(x, working)
    residual = hypergeometric_residual(upper, lower, f_series, x_series)
    label = f"{len(upper)}F{len(lower)}({','.join(map(str, upper))}; "
    label += f"{','.join(map(str, lower))}) equation for {f} in {x}"
    return _verdicts(label, residual, precision)


def _params(values: Sequence[Fraction]) -> str:
    return " ".join(str(v) for v in values)


def _a_record(group: GroupForms) -> IdentityRecord:
    sig = group.signature
    a, c = group.name("A^rho"), group.name("C^rho")
    return IdentityRecord(
        id=f"hypergeometric.{group.gid}.A",
        tier=Tier.HYPERGEOMETRIC,
        topic="hypergeometric-representation",
        citation="A = 2F1((1-a-b-c)/2, (1+a-b-c)/2; 1-c; C^rho/A^rho)",
        d=group.d,
        equal=[
            f"(pow {a} {1 / sig.rho})",
            f"(hyp2f1 {_params(sig.a_parameters())} (div {c} {a}))",
        ],
    )


def _b_record(group: GroupForms) -> IdentityRecord:
    sig = group.signature
    b, c = group.name("B^rho"), group.name("C^rho")
    return IdentityRecord(
        id=f"hypergeometric.{group.gid}.B",
        tier=Tier.HYPERGEOMETRIC,
        topic="hypergeometric-representation",
        citation="B = 2F1((1-a-b-c)/2, (1-a+b-c)/2; 1-c; -C^rho/B^rho)",
        d=group.d,
        equal=[
            f"(pow {b} {1 / sig.rho})",
            f"(hyp2f1 {_params(sig.b_parameters())} (neg (div {c} {b})))",
        ],
    )


def _clausen_record(group: GroupForms) -> IdentityRecord:
    sig = group.signature
    a, c = group.name("A^rho"), group.name("C^rho")
    two = 2 / sig.rho
    return IdentityRecord(
        id=f"hypergeometric.{group.gid}.clausen",
        tier=Tier.HYPERGEOMETRIC,
        topic="clausen-square",
        citation="A^2 = 3F2(2/rho, 1/2, 1-2/rho; 1, 1; C^rho/A^rho)",
        d=group.d,
        equal=[
            f"(pow {a} {two})",
            f"(hyp3f2 {two} 1/2 {1 - two} 1 1 (div {c} {a}))",
        ],
    )


def _check_record(group: GroupForms, check: str, topic: str, citation: str):
    return IdentityRecord(
        id=f"hypergeometric.{group.gid}.{check}",
        tier=Tier.HYPERGEOMETRIC,
        topic=topic,
        citation=citation,
        d=group.d,
        check=check,
        params={"group": group.gid},
    )


def representation_records() -> List[IdentityRecord]:
    """The per-group records; the named ones live in the catalog file."""
    records = []
    for group in GROUP_FORMS.values():
        records.append(_a_record(group))
        records.append(_b_record(group))
        if group.signature.kind == GroupKind.FRICKE:
            records.append(_clausen_record(group))
        records.append(
            _check_record(
                group,
                "t-derivative",
                "t-derivative",
                "t' = (-t*/width) A^(rho(1-a)) B^(-rho(1+b)) C^rho",
            )
        )
        records.append(
            _check_record(
                group,
                "u-hat",
                "u-hat-consistency",
                "-Q(t) t'^2 = u4/(width rho)^2",
            )
        )
    return records


def verify_hypergeometric_representations(precision: Optional[int] = None):
    """Every hypergeometric-tier record, generated and catalogued."""
    from qforms.identity.catalog import load_catalog
    from qforms.identity.services import verify

    precision = precision or settings.QFORMS_HYPERGEOMETRIC_PRECISION
    records = [r for r in load_catalog() if r.tier == Tier.HYPERGEOMETRIC]
    reports = [verify(r, precision) for r in records]
    failed = [r.id for r in reports if not r.passed]
    if failed:
        logger.warning(f"{len(failed)} representations failed: {', '.join(failed)}")
    else:
        logger.success(f"{len(reports)} representations hold to O(q^{precision})")
    return reports
