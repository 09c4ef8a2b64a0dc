from typing import Dict, List, NamedTuple

from qforms.hypergeometric.signatures import (
    SIGNATURES,
    GroupKind,
    TriangleGroupSignature,
)

# C4^4 = 2^6 [2]^16/[1]^8 and C4^2 = 2^3 [2]^8/[1]^4 keep the Gamma0(2) forms rational
C4_4 = "(mul 64 (eta (2 16) (1 -8)))"
C4_2 = "(mul 8 (eta (2 8) (1 -4)))"


class GroupForms(NamedTuple):
    """
    The rho-th powers of A, B, C and the weight-2 form E of a triangle group,
    as expressions whose coefficients live in Q(sqrt(d)).
    """

    signature: TriangleGroupSignature
    d: int
    a_rho: str
    b_rho: str
    c_rho: str
    e: str
    alternates: Dict[str, List[str]] = {}

    @property
    def gid(self) -> str:
        return self.signature.gid

    def name(self, part: str) -> str:
        return f"{self.gid}.{part}"


def _forms(gid: str, d: int, a: str, b: str, c: str, e: str, **alternates):
    return GroupForms(SIGNATURES[gid], d, a, b, c, e, alternates)


GROUP_FORMS: Dict[str, GroupForms] = {
    g.gid: g
    for g in (
        _forms(
            "gamma0_2",
            0,
            "(pow A4 4)",
            "(pow B4 4)",
            C4_4,
            "Er.4",
        ),
        _forms("gamma0_3", 0, "(pow A3 3)", "(pow B3 3)", "(pow C3 3)", "Er.3"),
        _forms("gamma0_4", 0, "(pow A2 2)", "(pow B2 2)", "(pow C2 2)", "Er.2"),
        _forms(
            "gamma1",
            0,
            "(pow E4 3)",
            "(pow E6 2)",
            "(mul 1728 Delta)",
            "E2",
        ),
        _forms(
            "gamma0p_2",
            0,
            "(pow A4 8)",
            f"(pow (sub (pow B4 4) {C4_4}) 2)",
            f"(mul 4 (pow B4 4) {C4_4})",
            "Er.8",
        ),
        _forms(
            "gamma0p_3",
            0,
            "(pow A3 6)",
            "(pow (sub (pow B3 3) (pow C3 3)) 2)",
            "(mul 4 (pow B3 3) (pow C3 3))",
            "Er.6",
        ),
        _forms(
            "iso_2a",
            -3,
            "(add E6 (mul 24 w (eta (1 12))))",
            "(sub E6 (mul 24 w (eta (1 12))))",
            "(mul 48 w (eta (1 12)))",
            "E2",
            # zeta3 = (-1 + w)/2, taken at q^(1/2)
            a_rho=[
                "(pow (qpow (add (pow B2 2) (mul 1/2 (add 1 w) (pow C2 2))) 1/2) 3)"
            ],
            b_rho=[
                "(pow (qpow (add (pow B2 2) (mul 1/2 (sub 1 w) (pow C2 2))) 1/2) 3)"
            ],
        ),
        _forms(
            "iso_4a",
            -1,
            f"(pow (add (pow B4 2) (mul w {C4_2})) 2)",
            f"(pow (sub (pow B4 2) (mul w {C4_2})) 2)",
            f"(mul 4 w (pow B4 2) {C4_2})",
            "Er.8",
            a_rho=["(pow (add A2 (mul w C2)) 4)"],
            b_rho=["(pow (sub A2 (mul w C2)) 4)"],
        ),
        _forms(
            "iso_6a",
            -3,
            "(add (sub (pow B3 3) (pow C3 3)) (mul 6 w (eta (1 3) (3 3))))",
            "(sub (sub (pow B3 3) (pow C3 3)) (mul 6 w (eta (1 3) (3 3))))",
            "(mul 12 w (eta (1 3) (3 3)))",
            "Er.6",
        ),
    )
}


def group_forms(gid: str) -> GroupForms:
    try:
        return GROUP_FORMS[gid]
    except KeyError:
        raise KeyError(f"unknown group {gid!r}; known: {', '.join(GROUP_FORMS)}")


def groups_of_kind(kind: GroupKind) -> List[GroupForms]:
    return [g for g in GROUP_FORMS.values() if g.signature.kind == kind]
