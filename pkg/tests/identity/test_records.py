import pytest

from qforms import settings
from qforms.identity.catalog import load_catalog
from qforms.identity.models import Tier
from qforms.identity.services import verify

# every record of the shipped catalog, at a precision that keeps the run short
PRECISION = {Tier.COUNTING: 30, Tier.HYPERGEOMETRIC: 10}


@pytest.mark.parametrize("record", load_catalog(), ids=lambda r: r.id)
def test_catalog_record(record, monkeypatch):
    monkeypatch.setattr(settings, "QFORMS_PF_SAMPLES", 4)
    report = verify(record, PRECISION.get(record.tier, 16))
    assert report.passed, report.summary()
    assert report.checks, record.id
