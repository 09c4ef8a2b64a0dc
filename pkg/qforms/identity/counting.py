"""
Representation counts by sums of squares and of triangular numbers. The
lattice counts enumerate coordinates one at a time and never touch a q-series;
the theta counts read the same numbers off powers of theta3^2 and theta2^2.
"""
from fractions import Fraction
from math import isqrt
from typing import Callable, Dict, List, Tuple

from qforms.core.arithmetic import WeightVector, sigma, sigma_conj
from qforms.core.qseries import PuiseuxSeries
from qforms.forms.registry import eval_form

from .models import CountKind, CountingOracle, CountingRow


def _add_coordinate(ways: List[int], values: List[int]) -> List[int]:
    size = len(ways)
    out = [0] * size
    for n in range(size):
        if not ways[n]:
            continue
        for v in values:
            if n + v >= size:
                break
            out[n + v] += ways[n]
    return out


def square_counts(dims: int, max_n: int) -> List[int]:
    """r_dims(n) for n <= max_n, counting x in Z^dims with sum x_i^2 = n."""
    squares = []
    for x in range(-isqrt(max_n), isqrt(max_n) + 1):
        squares.append(x * x)
    squares.sort()
    ways = [1] + [0] * max_n
    for _ in range(dims):
        ways = _add_coordinate(ways, squares)
    return ways


def triangle_counts(dims: int, max_n: int, nonnegative: bool = False) -> List[int]:
    """
    t_dims(n) for n <= max_n: m in Z^dims (or m >= 0) with sum m_i(m_i + 1)/2 = n.
    Over Z each triangular number is hit twice, by m and -m - 1.
    """
    triangles = []
    m = 0
    while m * (m + 1) // 2 <= max_n:
        triangles.append(m * (m + 1) // 2)
        if not nonnegative:
            triangles.append(m * (m + 1) // 2)
        m += 1
    triangles.sort()
    ways = [1] + [0] * max_n
    for _ in range(dims):
        ways = _add_coordinate(ways, triangles)
    return ways


def lattice_counts(oracle: CountingOracle) -> List[int]:
    if oracle.kind == CountKind.SQUARES:
        return square_counts(2 * oracle.s, oracle.max_n)
    return triangle_counts(2 * oracle.s, oracle.max_n)


Formula = Callable[[int], Fraction]


def _s(k: int, *w: int, shift: Tuple[int, int] = (1, 0)) -> Formula:
    a, b = shift
    vector = WeightVector.of(*w)
    return lambda n: sigma(k, a * n + b, vector)


def _c(k: int, *w: int, shift: Tuple[int, int] = (1, 0)) -> Formula:
    a, b = shift
    vector = WeightVector.of(*w)
    return lambda n: sigma_conj(k, a * n + b, vector)


def _scaled(c: int, *parts: Formula) -> Formula:
    return lambda n: c * sum((p(n) for p in parts), Fraction(0))


# each formula is checked for n >= 1 for squares (r(0) = 1 is not a divisor sum)
# and for n >= 0 for triangles
FORMULAS: Dict[Tuple[CountKind, int], Dict[str, Formula]] = {
    (CountKind.SQUARES, 1): {
        "4 sigma0(n; 0,1,0,-1)": _scaled(4, _s(0, 0, 1, 0, -1)),
    },
    (CountKind.SQUARES, 2): {
        "8 sigma1(n; 0,1,1,1)": _scaled(8, _s(1, 0, 1, 1, 1)),
        "8 sigmac1(n; -3,1,1,1)": _scaled(8, _c(1, -3, 1, 1, 1)),
    },
    (CountKind.SQUARES, 3): {
        "16 sigmac2(n; 0,1,0,-1) - 4 sigma2(n; 0,1,0,-1)": lambda n: 16
        * sigma_conj(2, n, WeightVector.of(0, 1, 0, -1))
        - 4 * sigma(2, n, WeightVector.of(0, 1, 0, -1)),
    },
    (CountKind.SQUARES, 4): {
        "4 sigma3(n; 4,4,3,4)": _scaled(4, _s(3, 4, 4, 3, 4)),
        "16 sigmac3(n; 15,1,-1,1)": _scaled(16, _c(3, 15, 1, -1, 1)),
    },
    (CountKind.TRIANGLES, 1): {
        "4 sigma0(4n+1; 0,1,-1,-1,0,1,1,-1)": _scaled(
            4, _s(0, 0, 1, -1, -1, 0, 1, 1, -1, shift=(4, 1))
        ),
        "4 sigma0(8n+2; 0,1,0,-1)": _scaled(4, _s(0, 0, 1, 0, -1, shift=(8, 2))),
    },
    (CountKind.TRIANGLES, 2): {
        "8 sigma1(2n+1; 0,2,-1,2)": _scaled(8, _s(1, 0, 2, -1, 2, shift=(2, 1))),
        "16 sigmac1(2n+1; 0,1,-2,1)": _scaled(
            16, _c(1, 0, 1, -2, 1, shift=(2, 1))
        ),
        "16 sigma1(2n+1; 1)": _scaled(16, _s(1, 1, shift=(2, 1))),
        "16 sigmac1(2n+1; 1)": _scaled(16, _c(1, 1, shift=(2, 1))),
    },
    (CountKind.TRIANGLES, 3): {
        "sigma2(4n+3; 0,-4,1,4,0,-4,-1,4) + 4 sigmac2(4n+3; 0,1,-4,-1,0,1,4,-1)": (
            _scaled(
                1,
                _s(2, 0, -4, 1, 4, 0, -4, -1, 4, shift=(4, 3)),
                _scaled(4, _c(2, 0, 1, -4, -1, 0, 1, 4, -1, shift=(4, 3))),
            )
        ),
        "8 sigma2(4n+3; 0,-1,0,1)": _scaled(8, _s(2, 0, -1, 0, 1, shift=(4, 3))),
    },
    (CountKind.TRIANGLES, 4): {
        "4 sigma3(2n+2; 7,0,8,0)": _scaled(4, _s(3, 7, 0, 8, 0, shift=(2, 2))),
        "256 sigmac3(2n+2; 0,0,1,0)": _scaled(
            256, _c(3, 0, 0, 1, 0, shift=(2, 2))
        ),
        "32 sigma3(n+1; 7,8)": _scaled(32, _s(3, 7, 8, shift=(1, 1))),
        "256 sigmac3(n+1; 0,1)": _scaled(256, _c(3, 0, 1, shift=(1, 1))),
    },
}


def formulas(oracle: CountingOracle) -> Dict[str, Formula]:
    return FORMULAS[(oracle.kind, oracle.s)]


def first_formula_index(oracle: CountingOracle) -> int:
    return 1 if oracle.kind == CountKind.SQUARES else 0


def theta_counts(oracle: CountingOracle) -> List[Fraction]:
    """
    r_2s(n) is the q^n coefficient of A2^s = theta3^(2s); t_2s(n) is the
    q^(s/2 + 2n) coefficient of C2^s = theta2^(2s).
    """
    s, max_n = oracle.s, oracle.max_n
    if oracle.kind == CountKind.SQUARES:
        base, exponents = "A2", [Fraction(n) for n in range(max_n + 1)]
    else:
        base = "C2"
        exponents = [Fraction(s, 2) + 2 * n for n in range(max_n + 1)]
    precision = exponents[-1] + 1
    factor = eval_form(base, precision)
    power = PuiseuxSeries.constant(1)
    for _ in range(s):
        power = power * factor
    return [power.coefficient(e) for e in exponents]


def counting_rows(oracle: CountingOracle) -> List[CountingRow]:
    lattice = lattice_counts(oracle)
    nonnegative = None
    if oracle.kind == CountKind.TRIANGLES:
        nonnegative = triangle_counts(2 * oracle.s, oracle.max_n, nonnegative=True)
    theta = theta_counts(oracle)
    first = first_formula_index(oracle)
    rows = []
    for n in range(oracle.max_n + 1):
        values = {}
        if n >= first:
            values = {label: f(n) for label, f in formulas(oracle).items()}
        rows.append(
            CountingRow(
                n,
                lattice[n],
                nonnegative[n] if nonnegative else None,
                theta[n],
                values,
            )
        )
    return rows
