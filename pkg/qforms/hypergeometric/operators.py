from fractions import Fraction
from typing import Dict, NamedTuple, Tuple, Union

from qforms.core.chazy import ChazyPolynomial, ChazyPolynomialError

from .ratfunc import RationalFunctionInT
from .series import HypergeometricError

Number = Union[int, Fraction]


class PFOperator:
    """
    D_t^2 + P D_t + Q with P = (alpha + beta)/t + (1 - alpha)/(t - t*) and
    Q = [gamma^2 - (1 - alpha - beta)^2] t* / (4 t^2 (t - t*)).
    """

    def __init__(
        self, alpha: Number, beta: Number, gamma: Number, t_star: Number = -1
    ):
        self.alpha = Fraction(alpha)
        self.beta = Fraction(beta)
        self.gamma = Fraction(gamma)
        self.t_star = Fraction(t_star)
        if not self.t_star:
            raise HypergeometricError("the singular point t* must be nonzero")
        t = RationalFunctionInT.variable()
        shifted = t - self.t_star
        self.P = (self.alpha + self.beta) / t + (1 - self.alpha) / shifted
        self.Q = (
            RationalFunctionInT.constant(
                (self.gamma**2 - (1 - self.alpha - self.beta) ** 2) * self.t_star / 4
            )
            / (t * t * shifted)
        )

    @property
    def exponents(self) -> Tuple[Fraction, Fraction, Fraction]:
        return self.alpha, self.beta, self.gamma

    def is_degenerate(self) -> bool:
        """Q vanishes identically, so every u_k does."""
        return self.Q.is_zero()

    def __repr__(self) -> str:
        return (
            f"PFOperator(alpha={self.alpha}, beta={self.beta}, "
            f"gamma={self.gamma}, t*={self.t_star})"
        )


def u_hat_ladder(op: PFOperator, k_max: int = 8) -> Dict[int, RationalFunctionInT]:
    """u4 = -Q and u_(k+2) = (u_k)_t + (k/2) P u_k, for k up to k_max."""
    if k_max < 4 or k_max % 2:
        raise HypergeometricError(f"k_max must be even and at least 4, got {k_max}")
    ladder = {4: -op.Q}
    for k in range(4, k_max, 2):
        ladder[k + 2] = ladder[k].derivative() + op.P * ladder[k] * Fraction(k, 2)
    return ladder


def chazy_residual(op: PFOperator, poly: ChazyPolynomial) -> RationalFunctionInT:
    """
    poly(u4, u6, u8) with u_k -> u_hat_k; the common power of t-dot cancels by
    homogeneity, so a zero result means the Chazy equation holds for op.
    """
    try:
        poly.weight
    except ChazyPolynomialError as exc:
        raise HypergeometricError(str(exc))
    return poly.evaluate(u_hat_ladder(op, 8))


class GeneralCoefficients(NamedTuple):
    c88: Fraction
    c86: Fraction
    c84: Fraction
    c66: Fraction
    c64: Fraction
    c44: Fraction

    def polynomial(self, name: str = "general") -> ChazyPolynomial:
        # u4^2 u8^2, u4 u6^2 u8, u4^4 u8, u6^4, u4^3 u6^2, u4^6
        return ChazyPolynomial(
            {
                (2, 0, 2): self.c88,
                (1, 2, 1): self.c86,
                (4, 0, 1): self.c84,
                (0, 4, 0): self.c66,
                (3, 2, 0): self.c64,
                (6, 0, 0): self.c44,
            },
            name,
        )


def theorem_general_coeffs(
    alpha: Number, beta: Number, gamma: Number
) -> GeneralCoefficients:
    """Coefficients of the weight-24 Chazy equation for (alpha, beta, gamma)."""
    a, b, g = Fraction(alpha), Fraction(beta), Fraction(gamma)
    minus = a + b - g - 1
    plus = a + b + g - 1
    both = minus * plus
    return GeneralCoefficients(
        c88=(2 * a - 1) * (2 * b - 1) * both**2,
        c86=-((2 * a - 1) * (3 * b - 1) + (3 * a - 1) * (2 * b - 1)) * both**2,
        c84=-16 * (2 * a - 1) * (2 * b - 1) * (a + b - 1) * both,
        c66=(3 * a - 1) * (3 * b - 1) * both**2,
        c64=4
        * (
            2 * (2 * a - 1) ** 2 * (3 * b - 1)
            + 2 * (3 * a - 1) * (2 * b - 1) ** 2
            - 3 * (a - b) ** 2
        )
        * both,
        c44=64 * (2 * a - 1) * (2 * b - 1) * (a + b - 1) ** 2,
    )


def general_polynomial(alpha: Number, beta: Number, gamma: Number) -> ChazyPolynomial:
    return theorem_general_coeffs(alpha, beta, gamma).polynomial(
        f"general({alpha},{beta},{gamma})"
    )

