import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from loguru import logger

from qforms import settings
from qforms.core.arithmetic import character, eisenstein_constant
from qforms.core.qseries import PuiseuxSeries, QuadExtScalar, substitute_power

from .expressions import Evaluator
from .groups import GROUP_FORMS
from .kernels import (
    divisor_series,
    eisenstein_character_series,
    eta_product,
    theta_sum,
)
from .models import (
    DivisorSeries,
    EisensteinCombo,
    EisensteinTerm,
    EtaQuotient,
    Expr,
    FormDescriptor,
    LatticeRule,
    RouteCheck,
    ThetaSum,
)

__all__ = [
    "UnknownFormError",
    "descriptor",
    "eval_form",
    "evaluate_route",
    "form_names",
    "registry_crosschecks",
    "theta_sum",
]

Precision = Union[int, Fraction]

F = Fraction
ZETA3 = QuadExtScalar(F(-1, 2), F(1, 2), -3)
ZETA3_SQUARED = QuadExtScalar(F(-1, 2), F(-1, 2), -3)


class UnknownFormError(Exception):
    pass


LATTICES: Dict[str, LatticeRule] = {
    rule.name: rule
    for rule in (
        LatticeRule("theta2", 1, (1, 0, 0), (F(1, 2), F(0))),
        LatticeRule("theta3", 1, (1, 0, 0)),
        LatticeRule("theta4", 1, (1, 0, 0), linear=(1, 0), values=(1, -1)),
        LatticeRule("A3", 2, (1, 1, 1)),
        LatticeRule(
            "B3",
            2,
            (1, 1, 1),
            linear=(1, -1),
            values=(1, ZETA3, ZETA3_SQUARED),
            d=-3,
        ),
        LatticeRule("C3", 2, (1, 1, 1), (F(1, 3), F(1, 3))),
    )
}


def _eta(*factors: Tuple[int, int], prefactor=1) -> EtaQuotient:
    return EtaQuotient(tuple(factors), prefactor)


def _sigma(k, weights, constant=0, scale=1, conjugate=False, step=1):
    return DivisorSeries(
        k, tuple(F(w) for w in weights), F(constant), F(scale), conjugate, F(step)
    )


def _combo(*terms: Tuple) -> EisensteinCombo:
    # (coeff, k) or (coeff, k, power) over trivial characters
    return EisensteinCombo(
        tuple(
            EisensteinTerm(F(t[0]), t[1], power=F(t[2] if len(t) > 2 else 1))
            for t in terms
        )
    )


def _log_derivative(eta: str) -> Expr:
    return Expr(f"(div (d {eta}) {eta})")


def _form(name, routes, weight, group, order=None, d=0, note="") -> FormDescriptor:
    return FormDescriptor(
        name=name,
        routes=list(routes),
        weight=weight,
        group=group,
        d=d,
        order=order,
        note=note,
    )


_STATIC: List[FormDescriptor] = [
    # theta-nulls
    _form(
        "theta2",
        [_eta((2, -1), (4, 2), prefactor=2), ThetaSum(LATTICES["theta2"])],
        F(1, 2),
        "Gamma0(4)",
        F(1, 4),
    ),
    _form(
        "theta3",
        [_eta((1, -2), (2, 5), (4, -2)), ThetaSum(LATTICES["theta3"])],
        F(1, 2),
        "Gamma0(4)",
        0,
    ),
    _form(
        "theta4",
        [_eta((1, 2), (2, -1)), ThetaSum(LATTICES["theta4"])],
        F(1, 2),
        "Gamma0(4)",
        0,
    ),
    # signature 4, level 2
    _form(
        "A4",
        [
            Expr(
                "(div (pow (add (mul 64 (eta (2 24))) (eta (1 24))) 1/4)"
                " (eta (1 2) (2 2)))"
            ),
            Expr("(pow (add (pow theta2 4) (pow theta3 4)) 1/2)"),
            Expr("(pow (add 1 (mul 24 (sigmac 1 (-1 1)))) 1/2)"),
        ],
        1,
        "Gamma0(2)",
        0,
    ),
    _form("B4", [_eta((1, 4), (2, -2)), Expr("B2")], 1, "Gamma0(2)", 0),
    _form(
        "C4",
        [
            _eta((2, 4), (1, -2), prefactor=QuadExtScalar(0, 2, 2)),
            Expr("(mul 1/2 w (qpow C2 1/2))"),
            Expr("(mul w theta2 theta3)"),
            Expr("(mul 2 w (pow (sigmac 3 (0 1)) 1/4))"),
        ],
        1,
        "Gamma0(2)",
        F(1, 4),
        d=2,
    ),
    # signature 3, level 3
    _form(
        "A3",
        [
            Expr(
                "(div (pow (add (mul 27 (eta (3 12))) (eta (1 12))) 1/3)"
                " (eta (1 1) (3 1)))"
            ),
            ThetaSum(LATTICES["A3"]),
            Expr("(add (mul theta3 (qpow theta3 3)) (mul theta2 (qpow theta2 3)))"),
            _sigma(0, (0, 1, -1), 1, 6),
        ],
        1,
        "Gamma0(3)",
        0,
    ),
    _form(
        "B3", [_eta((1, 3), (3, -1)), ThetaSum(LATTICES["B3"])], 1, "Gamma0(3)", 0
    ),
    _form(
        "C3",
        [_eta((3, 3), (1, -1), prefactor=3), ThetaSum(LATTICES["C3"])],
        1,
        "Gamma0(3)",
        F(1, 3),
    ),
    # signature 2, level 4
    _form(
        "A2",
        [
            _eta((2, 10), (1, -4), (4, -4)),
            Expr("(div (pow (add (mul 16 (eta (4 8))) (eta (1 8))) 1/2) (eta (2 2)))"),
            Expr("(pow theta3 2)"),
            _sigma(0, (0, 1, 0, -1), 1, 4),
        ],
        1,
        "Gamma0(4)",
        0,
    ),
    _form("B2", [_eta((1, 4), (2, -2)), Expr("(pow theta4 2)")], 1, "Gamma0(4)", 0),
    _form(
        "C2",
        [_eta((4, 4), (2, -2), prefactor=4), Expr("(pow theta2 2)")],
        1,
        "Gamma0(4)",
        F(1, 2),
    ),
    # weight-2 log-derivatives of C_r^r
    _form(
        "Er.4",
        [
            _sigma(1, (-1, 1), 1, 8),
            _sigma(1, (-3, 1), 1, 8, conjugate=True),
            _combo((F(4, 3), 2, 2), (F(-1, 3), 2)),
            _log_derivative("(eta (2 16) (1 -8))"),
        ],
        2,
        "Gamma0(2)",
        0,
    ),
    _form(
        "Er.3",
        [
            _sigma(1, (-2, 1, 1), 1, 3),
            _sigma(1, (-8, 1, 1), 1, 3, conjugate=True),
            _combo((F(9, 8), 2, 3), (F(-1, 8), 2)),
            _log_derivative("(eta (3 9) (1 -3))"),
        ],
        2,
        "Gamma0(3)",
        0,
    ),
    _form(
        "Er.2",
        [
            _sigma(1, (-1, 0, 1, 0), 1, 4),
            _sigma(1, (-3, 0, 1, 0), 1, 8, conjugate=True),
            _combo((F(4, 3), 2, 4), (F(-1, 3), 2, 2)),
            Expr("(qpow Er.4 2)"),
            _log_derivative("(eta (4 8) (2 -4))"),
        ],
        2,
        "Gamma0(4)",
        0,
    ),
    _form("Er.12", [Expr("E2"), _combo((1, 2))], 2, "Gamma(1)", 0),
    _form(
        "Er.8",
        [
            _sigma(1, (2, 1), 1, -8),
            _sigma(1, (3, 1), 1, -8, conjugate=True),
            _combo((F(2, 3), 2, 2), (F(1, 3), 2)),
        ],
        2,
        "Gamma0+(2)",
        0,
    ),
    _form(
        "Er.6",
        [
            _sigma(1, (2, 1, 1), 1, -6),
            _sigma(1, (4, 1, 1), 1, -6, conjugate=True),
            _combo((F(3, 4), 2, 3), (F(1, 4), 2)),
        ],
        2,
        "Gamma0+(3)",
        0,
    ),
    # level one
    _form(
        "Delta",
        [_eta((1, 24)), Expr("(div (sub (pow E4 3) (pow E6 2)) 1728)")],
        12,
        "Gamma(1)",
        1,
    ),
    _form("j", [Expr("(div (pow E4 3) Delta)")], 0, "Gamma(1)", -1),
    # Hauptmoduls
    _form(
        "t2",
        [
            _eta((2, 24), (1, -24), prefactor=2**12),
            Expr("(mul 64 (div gamma0_2.C^rho gamma0_2.B^rho))"),
        ],
        0,
        "Gamma0(2)",
        1,
    ),
    _form(
        "t3",
        [
            _eta((3, 12), (1, -12), prefactor=3**6),
            Expr("(mul 27 (div gamma0_3.C^rho gamma0_3.B^rho))"),
        ],
        0,
        "Gamma0(3)",
        1,
    ),
    _form(
        "t4",
        [
            _eta((4, 8), (1, -8), prefactor=2**8),
            Expr("(mul 16 (div gamma0_4.C^rho gamma0_4.B^rho))"),
        ],
        0,
        "Gamma0(4)",
        1,
    ),
    # the theta-system: K = theta3^2 and its three companions
    _form("Khat", [Expr("(pow theta3 2)"), Expr("A2")], 1, "Gamma0(4)", 0),
    _form(
        "KhatEhat",
        [
            Expr("Er.2"),
            Expr("(add 1 (mul 8 (qpow (lambert 1 -1 2) 2)))"),
            Expr("(mul 4 (div (d theta2) theta2))"),
        ],
        2,
        "Gamma0(4)",
        0,
    ),
    _form("Ehat", [Expr("(div KhatEhat Khat)")], 1, "Gamma0(4)", 0),
    _form(
        "KhatGhat",
        [
            Expr("(mul 4 (div (d theta3) theta3))"),
            Expr("(div (d (pow theta3 4)) (pow theta3 4))"),
            Expr("(sub KhatEhat (pow theta4 4))"),
        ],
        2,
        "Gamma0(4)",
        1,
        note="(A2^2)'/A2^2",
    ),
    _form(
        "KhatIhat",
        [
            Expr("(mul 4 (div (d theta4) theta4))"),
            Expr("(div (d (pow theta4 4)) (pow theta4 4))"),
            Expr("(sub KhatEhat (pow theta3 4))"),
        ],
        2,
        "Gamma0(4)",
        1,
    ),
]

STATIC_FORMS: Dict[str, FormDescriptor] = {f.name: f for f in _STATIC}

_EISENSTEIN = re.compile(r"^E(\d+)$")
_EISENSTEIN_CHARACTER = re.compile(r"^E(\d+)\.([^.]+)\.([^.]+)$")
_ETA = re.compile(r"^eta\.(\d+)$")
_GROUP_PART = re.compile(r"^(\w+)\.(A\^rho|B\^rho|C\^rho|E)$")
_LADDER = re.compile(r"^(\w+)\.u(\d+)$")


def _eisenstein(k: int) -> FormDescriptor:
    if k < 2 or k % 2:
        raise UnknownFormError(f"E{k}: Eisenstein series need an even weight >= 2")
    a_k = eisenstein_constant(k)
    return _form(
        f"E{k}",
        [
            _sigma(k - 1, (1,), 1, a_k),
            Expr(f"(add 1 (mul {a_k} (lambert {k})))"),
            _combo((1, k)),
        ],
        k,
        "Gamma(1)",
        0,
    )


def _eisenstein_character(k: int, psi: str, phi: str) -> FormDescriptor:
    try:
        psi_c, phi_c = character(psi), character(phi)
    except Exception as exc:
        raise UnknownFormError(f"E{k}.{psi}.{phi}: {exc}")
    if psi_c(-1) * phi_c(-1) != (-1) ** k:
        raise UnknownFormError(f"E{k}.{psi}.{phi}: characters have the wrong parity")
    return _form(
        f"E{k}.{psi}.{phi}",
        [EisensteinCombo((EisensteinTerm(F(1), k, psi, phi),))],
        k,
        f"Gamma0({psi_c.modulus * phi_c.modulus})",
        0 if psi_c.is_trivial else 1,
    )


def _group_part(gid: str, part: str) -> FormDescriptor:
    group = GROUP_FORMS[gid]
    rho = group.signature.rho
    if part == "E":
        return _form(group.name("E"), [Expr(group.e)], 2, group.signature.label, 0)
    key = {"A^rho": "a_rho", "B^rho": "b_rho", "C^rho": "c_rho"}[part]
    routes = [Expr(getattr(group, key))]
    routes += [Expr(text) for text in group.alternates.get(key, [])]
    order = F(1, group.signature.width) if part == "C^rho" else F(0)
    return _form(
        group.name(part), routes, rho, group.signature.label, order, d=group.d
    )


def _ladder(gid: str, k: int) -> FormDescriptor:
    """u4 = s E' - E^2 and u_(k+2) = u_k' - (k/s) E u_k with s = width * rho."""
    if k < 4 or k % 2:
        raise UnknownFormError(f"{gid}.u{k}: ladder forms are u4, u6, u8, ...")
    group = GROUP_FORMS[gid]
    s = group.signature.ladder_scale
    e = group.name("E")
    if k == 4:
        text = f"(sub (mul {s} (d {e})) (pow {e} 2))"
    else:
        below = f"{gid}.u{k - 2}"
        text = f"(sub (d {below}) (mul {F(k - 2) / s} {e} {below}))"
    return _form(f"{gid}.u{k}", [Expr(text)], k, group.signature.label)


@lru_cache(maxsize=None)
def descriptor(name: str) -> FormDescriptor:
    if name in STATIC_FORMS:
        return STATIC_FORMS[name]
    match = _EISENSTEIN.match(name)
    if match:
        return _eisenstein(int(match.group(1)))
    match = _EISENSTEIN_CHARACTER.match(name)
    if match:
        k, psi, phi = match.groups()
        return _eisenstein_character(int(k), psi, phi)
    match = _ETA.match(name)
    if match:
        delta = int(match.group(1))
        if not delta:
            raise UnknownFormError("eta.0 is not a form")
        return _form(
            name, [_eta((delta, 1))], F(1, 2), f"Gamma0({delta})", F(delta, 24)
        )
    match = _GROUP_PART.match(name)
    if match and match.group(1) in GROUP_FORMS:
        return _group_part(*match.groups())
    match = _LADDER.match(name)
    if match and match.group(1) in GROUP_FORMS:
        return _ladder(match.group(1), int(match.group(2)))
    raise UnknownFormError(f"unknown form {name!r}")


def form_names() -> List[str]:
    """The documented vocabulary, without the parametrized families."""
    names = list(STATIC_FORMS)
    names += ["E2", "E4", "E6", "E8"]
    for group in GROUP_FORMS.values():
        names += [group.name(part) for part in ("A^rho", "B^rho", "C^rho", "E")]
    return names


_memo: Dict[Tuple[str, int], PuiseuxSeries] = {}


def clear_memo() -> None:
    _memo.clear()


def evaluate_route(
    form: FormDescriptor, route: int, precision: Precision
) -> PuiseuxSeries:
    precision = F(precision)
    constructor = form.routes[route]
    if isinstance(constructor, EtaQuotient):
        series = eta_product(constructor.factors, precision, constructor.prefactor)
    elif isinstance(constructor, ThetaSum):
        series = theta_sum(constructor.rule, precision)
    elif isinstance(constructor, DivisorSeries):
        series = divisor_series(
            constructor.k,
            constructor.weights,
            precision,
            constructor.constant,
            constructor.scale,
            constructor.conjugate,
            constructor.step,
        )
    elif isinstance(constructor, EisensteinCombo):
        series = PuiseuxSeries.zero(precision)
        for term in constructor.terms:
            base = eisenstein_character_series(
                term.k,
                character(term.psi),
                character(term.phi),
                precision / term.power,
            )
            series = series + substitute_power(base, term.power).scale(term.coeff)
    else:
        series = Evaluator(eval_form, form.d)(constructor.text, precision)
    return series.over(form.d).truncate(precision)


def eval_form(name: str, precision: Precision, route: int = 0) -> PuiseuxSeries:
    """q-expansion of a registry form to O(q^precision)."""
    precision = F(precision)
    if precision <= 0:
        raise ValueError(f"precision must be positive, got {precision}")
    form = descriptor(name)
    if not 0 <= route < len(form.routes):
        raise UnknownFormError(f"{name} has no construction route {route}")
    cached = _memo.get((name, route))
    if cached is not None and (
        cached.precision is None or cached.precision >= precision
    ):
        logger.trace(f"memo hit {name}[{route}] at {precision}")
        return cached.truncate(precision)
    series = evaluate_route(form, route, precision)
    _memo[(name, route)] = series
    return series


def _coefficient(series: PuiseuxSeries, exponent: F):
    try:
        return series.coefficient(exponent)
    except Exception:
        return None


def check_order(name: str, precision: Precision) -> Optional[RouteCheck]:
    form = descriptor(name)
    if form.order is None:
        return None
    found = eval_form(name, precision).valuation()
    return RouteCheck(name, "order", found == form.order, None, form.order, found)


def check_routes(name: str, precision: Precision) -> List[RouteCheck]:
    form = descriptor(name)
    primary = eval_form(name, precision)
    checks = []
    for route in range(1, len(form.routes)):
        other = eval_form(name, precision, route)
        exponent = primary.first_difference(other)
        if exponent is None:
            checks.append(RouteCheck(name, f"route {route}", True))
            continue
        logger.error(f"{name}: route {route} differs from the primary at q^{exponent}")
        checks.append(
            RouteCheck(
                name,
                f"route {route}",
                False,
                exponent,
                _coefficient(primary, exponent),
                _coefficient(other, exponent),
            )
        )
    return checks


def registry_crosschecks(
    precision: Optional[Precision] = None, names: Optional[List[str]] = None
) -> List[RouteCheck]:
    """Every multi-route form against its primary route, plus declared orders at oo."""
    precision = F(precision or settings.QFORMS_PRECISION)
    report: List[RouteCheck] = []
    for name in names or form_names():
        report += check_routes(name, precision)
        order = check_order(name, precision)
        if order:
            report.append(order)
    failed = [c for c in report if not c.passed]
    if failed:
        logger.warning(f"{len(failed)} of {len(report)} registry checks failed")
    else:
        logger.success(f"{len(report)} registry checks passed to O(q^{precision})")
    return report
