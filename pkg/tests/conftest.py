import random

import pytest
import pytest_asyncio

from qforms.app import configure_logger
from qforms.forms.registry import clear_memo
from qforms.identity.catalog import load_catalog
from tests.helpers import is_seeded


# configure loguru once for the whole run
@pytest_asyncio.fixture(scope="session", autouse=True)
def logger_setup():
    configure_logger(verbose=False)
    yield


# parse and validate the shipped catalog once
@pytest_asyncio.fixture(scope="session")
def catalog():
    yield load_catalog()


@pytest.fixture
def rng():
    yield random.Random(is_seeded)


# a test that swaps settings must not see series memoized under the old ones
@pytest.fixture
def fresh_memo():
    clear_memo()
    yield
    clear_memo()
