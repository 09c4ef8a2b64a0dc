import random
from fractions import Fraction
from typing import List

from qforms.core.arithmetic import WeightVector
from qforms.core.qseries import PuiseuxSeries
from qforms.identity.models import IdentityRecord, Tier


def get_random_fraction(rng: random.Random, size: int = 9) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def get_random_series(
    rng: random.Random, precision: int = 12, den: int = 1, unit: bool = False
) -> PuiseuxSeries:
    """A dense series; with unit=True the constant term is nonzero."""
    coeffs = {n: get_random_fraction(rng) for n in range(precision * den)}
    if unit and not coeffs[0]:
        coeffs[0] = Fraction(1)
    return PuiseuxSeries(coeffs, den, precision)


def get_random_weights(rng: random.Random, modulus: int = 4) -> WeightVector:
    return WeightVector.of(*[rng.randint(-3, 3) for _ in range(modulus)])


def coefficients(series: PuiseuxSeries, count: int) -> List[Fraction]:
    return series.coefficient_list(count)


def make_record(**fields) -> IdentityRecord:
    values = {
        "id": "test.record",
        "tier": Tier.EXPANSION,
        "topic": "test",
        "citation": "test record",
    }
    values.update(fields)
    return IdentityRecord(**values)


is_seeded: int = 20221005
