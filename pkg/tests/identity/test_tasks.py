import pytest
from mock import patch

from qforms import settings
from qforms.identity.models import Tier
from qforms.tasks import apply_settings, batches, run_records, verify_caught

from ..helpers import make_record


def records():
    return [
        make_record(id="test.b", equal=["E4", "E4"]),
        make_record(id="test.a", equal=["E4", "E6"]),
        make_record(id="test.c", coefficients={"expr": "E2", "values": [1, -24]}),
    ]


# check inline runs come back sorted by id
@pytest.mark.asyncio
async def test_run_records_inline():
    reports = await run_records(records(), jobs=1, precision=6)
    assert [r.id for r in reports] == ["test.a", "test.b", "test.c"]
    assert [r.passed for r in reports] == [False, True, True]


# check an empty run and a single record
@pytest.mark.asyncio
async def test_run_records_small():
    assert await run_records([], jobs=4) == []
    reports = await run_records(records()[:1], jobs=4, precision=6)
    assert len(reports) == 1 and reports[0].passed


# check the job count is validated
@pytest.mark.asyncio
async def test_run_records_jobs():
    with pytest.raises(ValueError):
        await run_records(records(), jobs=0)


# check batches keep to one tier and split tiers larger than a job's share
def test_batches():
    mixed = [make_record(id=f"test.e{i}", equal=["E4", "E4"]) for i in range(3)]
    mixed += [
        make_record(id=f"test.g{i}", tier=Tier.GOLDEN, equal=["E4", "E4"])
        for i in range(2)
    ]
    assert [len(b) for b in batches(mixed, 2)] == [3, 2]
    split = batches(mixed, 4)
    assert [len(b) for b in split] == [2, 2, 1]
    assert all(len({r.tier for r in b}) == 1 for b in split)
    assert sorted(r.id for b in split for r in b) == sorted(r.id for r in mixed)
    assert [len(b) for b in batches(mixed, 1)] == [3, 2]


# check a pooled run gives the same reports as an inline one
@pytest.mark.asyncio
async def test_run_records_pool():
    pooled = await run_records(records(), jobs=2, precision=6)
    inline = await run_records(records(), jobs=1, precision=6)
    assert [r.id for r in pooled] == ["test.a", "test.b", "test.c"]
    assert [r.summary() for r in pooled] == [r.summary() for r in inline]


# check a crash inside verify becomes a failed report
def test_verify_caught():
    record = make_record(equal=["E4", "E4"])
    with patch("qforms.tasks.verify", side_effect=RuntimeError("boom")):
        report = verify_caught(record, 5)
    assert not report.passed
    assert report.error == "RuntimeError: boom"
    assert report.first_failure.lhs == "RuntimeError"


# check overrides are written to the settings module
def test_apply_settings():
    before = settings.QFORMS_PF_SAMPLES
    try:
        apply_settings({"QFORMS_PF_SAMPLES": 3})
        assert settings.QFORMS_PF_SAMPLES == 3
    finally:
        apply_settings({"QFORMS_PF_SAMPLES": before})
