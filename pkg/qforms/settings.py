import os
from os import path

from environs import Env  # type: ignore

env = Env()
env.read_env()

DEBUG = env.bool("DEBUG", default=False)

QFORMS_PATH = path.dirname(path.realpath(__file__))

# working precision, in units of q (not q^(1/D))
QFORMS_PRECISION = env.int("QFORMS_PRECISION", default=50)
QFORMS_HYPERGEOMETRIC_PRECISION = env.int(
    "QFORMS_HYPERGEOMETRIC_PRECISION", default=30
)
QFORMS_COUNTING_MAX_N = env.int("QFORMS_COUNTING_MAX_N", default=200)
QFORMS_PRECISION_SLACK = env.int("QFORMS_PRECISION_SLACK", default=4)
QFORMS_MAX_EXPONENT_DENOMINATOR = env.int(
    "QFORMS_MAX_EXPONENT_DENOMINATOR", default=48
)
QFORMS_DENSE_THRESHOLD = env.int("QFORMS_DENSE_THRESHOLD", default=64)

QFORMS_JOBS = env.int("QFORMS_JOBS", default=os.cpu_count() or 1)
QFORMS_SEED = env.int("QFORMS_SEED", default=7)
QFORMS_PF_SAMPLES = env.int("QFORMS_PF_SAMPLES", default=100)

QFORMS_CATALOG = env.str(
    "QFORMS_CATALOG", default=path.join(QFORMS_PATH, "identity", "catalog.yaml")
)
