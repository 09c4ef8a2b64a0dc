"""
Checks computed in code rather than read off catalog expressions. Each one is
called with the working precision, the record's discriminant and the record's
params, and returns one verdict per residual it examined.
"""
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational, div, expand  # type: ignore

from qforms import settings
from qforms.core.arithmetic import (
    DIMENSIONS,
    GENERATORS,
    character,
    character_exponent,
    cusps,
    eta_quotient_multiplier,
    eta_quotient_order_at_cusp,
    eta_quotient_weight,
    valence_total,
)
from qforms.core.chazy import CHAZY_POLYNOMIALS, U4, U6, U8
from qforms.forms.expressions import Evaluator
from qforms.forms.kernels import eta_product
from qforms.forms.registry import eval_form
from qforms.helpers import flag, judge, split_parts
from qforms.hypergeometric import families
from qforms.hypergeometric.operators import (
    PFOperator,
    chazy_residual,
    general_polynomial,
    theorem_general_coeffs,
)
from qforms.hypergeometric.representations import (
    hypergeometric_equation,
    t_derivative,
    u_hat_consistency,
)
from qforms.hypergeometric.signatures import signature

from .counting import counting_rows
from .ladder import (
    GROUP_POLYNOMIALS,
    chazy_residual_series,
    group_polynomial,
    halphen_residuals,
    system_residuals,
)
from .models import CountingOracle, ResidualVerdict

Builtin = Callable[..., List[ResidualVerdict]]


def _series_verdicts(label: str, residuals, precision) -> List[ResidualVerdict]:
    verdicts = []
    for name, series in residuals.items():
        for part_label, part in split_parts(series, f"{label} {name}"):
            verdicts.append(judge(part_label, part, precision))
    return verdicts


def system(group: str, precision: Fraction, d: int = 0) -> List[ResidualVerdict]:
    return _series_verdicts(group, system_residuals(group, precision), precision)


def halphen(group: str, precision: Fraction, d: int = 0) -> List[ResidualVerdict]:
    return _series_verdicts(
        f"{group} halphen", halphen_residuals(group, precision), precision
    )


def chazy(group: str, precision: Fraction, d: int = 0) -> List[ResidualVerdict]:
    poly = group_polynomial(group)
    residual = chazy_residual_series(group, precision, poly)
    return [judge(f"{group} {poly.render()}", residual, precision)]


def counting(
    kind: str, s: int, precision: Fraction, d: int = 0
) -> List[ResidualVerdict]:
    """The precision is read as max_n."""
    oracle = CountingOracle(kind=kind, s=s, max_n=int(precision))
    rows = counting_rows(oracle)
    columns: Dict[str, Optional[Tuple[int, str, str]]] = {"theta": None}
    if rows[0].nonnegative is not None:
        columns["nonnegative * 4^s"] = None
    for label in rows[-1].formulas:
        columns[label] = None
    for row in rows:
        found = {"theta": row.theta, **row.formulas}
        if row.nonnegative is not None:
            found["nonnegative * 4^s"] = row.nonnegative * 4**oracle.s
        for label, value in found.items():
            if columns[label] is None and value != row.lattice:
                columns[label] = (row.n, str(row.lattice), str(value))
    verdicts = []
    for label, failure in columns.items():
        name = f"{oracle.label}(n) = {label}"
        if failure is None:
            verdicts.append(flag(name, True))
        else:
            n, lattice, value = failure
            detail = f"n={n}: lattice {lattice}, got {value}"
            verdicts.append(flag(name, False, detail))
    return verdicts


def _factors(quotient: Sequence[Sequence[int]]) -> List[Tuple[int, int]]:
    return [(int(delta), int(r)) for delta, r in quotient]


def multiplier(
    quotient: Sequence[Sequence[int]],
    level: int,
    character_name: str,
    precision: Fraction,
    d: int = 0,
) -> List[ResidualVerdict]:
    """The eta-quotient multiplier agrees with the character on generators and
    their pairwise products."""
    factors = _factors(quotient)
    chi = character(character_name)
    generators = GENERATORS[level]
    elements = list(generators) + [g @ h for g in generators for h in generators]
    verdicts = []
    for g in elements:
        found = eta_quotient_multiplier(factors, g)
        expected = character_exponent(chi, g.d)
        verdicts.append(
            flag(
                f"{character_name} on {tuple(g)}",
                found == expected,
                f"zeta24^{found}, expected zeta24^{expected}",
            )
        )
    return verdicts


def valence(
    quotient: Sequence[Sequence[int]], level: int, precision: Fraction, d: int = 0
) -> List[ResidualVerdict]:
    factors = _factors(quotient)
    weight = eta_quotient_weight(factors)
    orders = {str(c): eta_quotient_order_at_cusp(factors, c) for c in cusps(level)}
    total = sum(orders.values(), Fraction(0))
    expected = valence_total(weight, level)
    at_infinity = orders[str(cusps(level)[-1])]
    valuation = eta_product(factors, precision).valuation()
    return [
        flag(
            f"sum of cusp orders on Gamma0({level})",
            total == expected,
            f"{orders} sum to {total}, expected {expected}",
        ),
        flag(
            "order at oo is the q-valuation",
            valuation == at_infinity,
            f"valuation {valuation}, cusp order {at_infinity}",
        ),
    ]


def spanning_dimension(
    forms: Sequence[str],
    level: int,
    character_name: str,
    weight: int,
    precision: Fraction,
    d: int = 0,
) -> List[ResidualVerdict]:
    """The listed forms are independent and as many as the dimension."""
    evaluate = Evaluator(eval_form, d)
    size = max(len(forms) + 2, 8)
    rows = []
    for text in forms:
        series = evaluate(text, size)
        rows.append([Rational(str(c)) for c in series.coefficient_list(size)])
    rank = Matrix(rows).rank()
    dimension = DIMENSIONS[(level, character_name, weight)]
    label = f"M_{weight}(Gamma0({level}), {character_name})"
    return [
        flag(f"{label} rank", rank == len(forms), f"rank {rank} of {len(forms)}"),
        flag(
            f"{label} dimension",
            dimension == len(forms),
            f"dimension {dimension}, {len(forms)} forms",
        ),
    ]


def _triple(values: Sequence) -> Tuple[Fraction, Fraction, Fraction]:
    a, b, g = (Fraction(str(v)) for v in values)
    return a, b, g


def pf_chazy(
    triple: Sequence,
    polynomial: str,
    precision: Fraction,
    d: int = 0,
    vanishes: bool = True,
    t_star: int = -1,
) -> List[ResidualVerdict]:
    op = PFOperator(*_triple(triple), t_star=t_star)
    residual = chazy_residual(op, CHAZY_POLYNOMIALS[polynomial])
    label = f"{polynomial} at {tuple(map(str, op.exponents))}"
    if vanishes:
        return [flag(label, residual.is_zero(), str(residual.as_expr()))]
    return [flag(f"{label} fails", not residual.is_zero(), "residual is zero")]


def pf_group(group: str, precision: Fraction, d: int = 0) -> List[ResidualVerdict]:
    """
    The group's Chazy polynomial annihilates the u-hat ladder of its operator and
    divides the weight-24 equation at the group's exponents.
    """
    sig = signature(group)
    name = GROUP_POLYNOMIALS[group]
    poly = CHAZY_POLYNOMIALS[name]
    residual = chazy_residual(PFOperator(*sig.exponents, t_star=-1), poly)
    general = general_polynomial(*sig.exponents).as_sympy()
    _, remainder = div(general, poly.as_sympy(), U4, U6, U8)
    return [
        flag(
            f"{group} {name} residual", residual.is_zero(), str(residual.as_expr())
        ),
        flag(
            f"{name} divides the weight-24 equation at {group}",
            expand(remainder) == 0,
            f"remainder {remainder}",
        ),
    ]


def pf_theorem(
    precision: Fraction,
    d: int = 0,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> List[ResidualVerdict]:
    verdicts = []
    for sample in families.sample_triples(
        samples or settings.QFORMS_PF_SAMPLES,
        settings.QFORMS_SEED if seed is None else seed,
    ):
        for t_star in (-1, -64):
            result = families.check_general(sample, Fraction(t_star))
            verdicts.append(
                flag(
                    f"general at {tuple(map(str, sample))}, t*={t_star}",
                    result.passed,
                    result.residual,
                )
            )
    return verdicts


def pf_families(
    precision: Fraction, d: int = 0, values: Optional[List[int]] = None
) -> List[ResidualVerdict]:
    return [
        flag(
            f"{r.label} at {tuple(map(str, r.triple))}"
            + (" (degenerate)" if r.degenerate else ""),
            r.passed,
            r.residual,
        )
        for r in families.check_families(values)
    ]


def pf_family_identities(precision: Fraction, d: int = 0) -> List[ResidualVerdict]:
    return [
        flag(label, passed) for label, passed in families.family_identities().items()
    ]


def pf_factorization(precision: Fraction, d: int = 0) -> List[ResidualVerdict]:
    return [
        flag(
            "general(1/2, 0, 0) = u6^2 p4 / 32", families.hecke_two_factorization()
        ),
        flag(
            "general(1/2, 0, 0) coefficients",
            tuple(theorem_general_coeffs(Fraction(1, 2), 0, 0))
            == (0, Fraction(1, 32), 0, Fraction(-1, 32), Fraction(1, 4), 0),
        ),
    ]


def pf_symmetry(
    precision: Fraction, d: int = 0, samples: int = 20, seed: int = 11
) -> List[ResidualVerdict]:
    verdicts = []
    for a, b, g in families.sample_triples(samples, seed):
        verdicts.append(
            flag(
                f"coefficients at ({a}, {b}, {g}) and ({b}, {a}, {g})",
                theorem_general_coeffs(a, b, g) == theorem_general_coeffs(b, a, g),
            )
        )
    return verdicts


def pf_reparametrization(
    triple: Sequence,
    polynomial: str,
    scales: Sequence[int],
    precision: Fraction,
    d: int = 0,
) -> List[ResidualVerdict]:
    """
    Moving the singular point from t* to c t* is t -> c t, so the residual picks
    up the factor c^(-w/2) and is evaluated at t / c.
    """
    a, b, g = _triple(triple)
    poly = CHAZY_POLYNOMIALS[polynomial]
    base = chazy_residual(PFOperator(a, b, g, t_star=-1), poly)
    verdicts = []
    for c in scales:
        moved = chazy_residual(PFOperator(a, b, g, t_star=-c), poly)
        expected = base.rescale(Fraction(1, c)) * Fraction(c) ** (-poly.weight // 2)
        verdicts.append(flag(f"{polynomial} with t* = {-c}", moved == expected))
    return verdicts


BUILTINS: Dict[str, Builtin] = {
    "system": system,
    "halphen": halphen,
    "chazy": chazy,
    "counting": counting,
    "multiplier": multiplier,
    "valence": valence,
    "spanning-dimension": spanning_dimension,
    "t-derivative": t_derivative,
    "u-hat": u_hat_consistency,
    "hypergeometric-equation": hypergeometric_equation,
    "pf-chazy": pf_chazy,
    "pf-group": pf_group,
    "pf-theorem": pf_theorem,
    "pf-families": pf_families,
    "pf-family-identities": pf_family_identities,
    "pf-factorization": pf_factorization,
    "pf-symmetry": pf_symmetry,
    "pf-reparametrization": pf_reparametrization,
}
