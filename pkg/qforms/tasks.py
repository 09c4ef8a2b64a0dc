import asyncio
import traceback
from concurrent.futures import Executor, ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from loguru import logger

from qforms import settings
from qforms.identity.models import (
    FirstFailure,
    IdentityRecord,
    ResidualVerdict,
    VerdictReport,
)
from qforms.identity.services import verify


def apply_settings(overrides: Dict[str, Any]) -> None:
    """Set module-level settings, in this process or a worker."""
    for key, value in overrides.items():
        setattr(settings, key, value)


def verify_caught(
    record: IdentityRecord,
    precision=None,
    overrides: Optional[Dict[str, Any]] = None,
) -> VerdictReport:
    """verify, with anything it raises turned into a failed report."""
    apply_settings(overrides or {})
    try:
        return verify(record, precision)
    except Exception as exc:
        logger.error(f"caught exception verifying {record.id}: {exc}")
        logger.error(traceback.format_exc())
        failure = FirstFailure(Fraction(0), type(exc).__name__, str(exc))
        return VerdictReport(
            id=record.id,
            tier=record.tier,
            citation=record.citation,
            checks=[ResidualVerdict("exception", False, failure)],
            error=f"{type(exc).__name__}: {exc}",
        )


def verify_batch(
    records: Sequence[IdentityRecord],
    precision=None,
    overrides: Optional[Dict[str, Any]] = None,
) -> List[VerdictReport]:
    """One worker's share; records of a tier share the worker's form memo."""
    return [verify_caught(r, precision, overrides) for r in records]


def batches(
    records: Sequence[IdentityRecord], jobs: int
) -> List[List[IdentityRecord]]:
    """Records grouped by tier, large tiers cut so no batch exceeds a job's share."""
    size = max(1, -(-len(records) // jobs))
    by_tier: Dict[str, List[IdentityRecord]] = {}
    for record in records:
        by_tier.setdefault(record.tier.value, []).append(record)
    result = []
    for group in by_tier.values():
        result.extend(group[i : i + size] for i in range(0, len(group), size))
    # longest first
    return sorted(result, key=len, reverse=True)


async def run_records(
    records: Sequence[IdentityRecord],
    jobs: Optional[int] = None,
    precision=None,
    overrides: Optional[Dict[str, Any]] = None,
) -> List[VerdictReport]:
    """
    Verify records across worker processes, a batch per tier; reports come back
    sorted by record id. A record never spans workers, so the slowest single
    record bounds the wall time.
    """
    if jobs is None:
        jobs = settings.QFORMS_JOBS
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if jobs == 1 or len(records) < 2:
        reports = verify_batch(records, precision, overrides)
    else:
        loop = asyncio.get_running_loop()
        executor: Executor
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            done = await asyncio.gather(
                *[
                    loop.run_in_executor(
                        executor, verify_batch, batch, precision, overrides
                    )
                    for batch in batches(records, jobs)
                ]
            )
        reports = [report for batch in done for report in batch]
    logger.debug(f"verified {len(records)} records with {jobs} jobs")
    return sorted(reports, key=lambda r: r.id)
