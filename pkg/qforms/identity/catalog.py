"""
The identity catalog: records read from catalog.yaml plus the per-group
records generated in code. Every expression is parsed and every form name
resolved when the catalog loads, so a typo fails the load instead of a run.
"""
from fnmatch import fnmatch
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Set

import yaml
from loguru import logger
from pydantic import ValidationError

from qforms import settings
from qforms.forms.expressions import ExpressionSyntaxError, free_names
from qforms.forms.groups import GROUP_FORMS
from qforms.forms.registry import UnknownFormError, descriptor
from qforms.hypergeometric.representations import representation_records

from .builtins import BUILTINS
from .models import IdentityRecord, Tier


class CatalogError(Exception):
    """The catalog file is missing, malformed or refers to unknown names."""


class VerificationConfigError(Exception):
    """A run was asked for something it cannot do, such as precision 0."""


# topics a complete catalog covers; missing_topics reports the gaps
REQUIRED_TOPICS = (
    "golden-expansion",
    "spanning",
    "supplementary",
    "kaneko-koike",
    "lambert",
    "hahn",
    "hauptmodul",
    "power-relation",
    "ramanujan-system",
    "theta-system",
    "theta-companions",
    "group-system",
    "halphen-system",
    "group-chazy",
    "delta-equation",
    "e2-equation",
    "jacobi-theta-equation",
    "ladder-vectors",
    "ladder-scaling",
    "agm-quadratic-2",
    "agm-quartic-2",
    "agm-cubic-3",
    "agm-quadratic-4",
    "hypergeometric-representation",
    "clausen-square",
    "t-derivative",
    "u-hat-consistency",
    "hypergeometric-named",
    "hypergeometric-equation",
    "iso-theta",
    "multiplier",
    "valence",
    "spanning-dimension",
    "counting-squares",
    "counting-triangles",
    "pf-hecke",
    "pf-group",
    "pf-theorem",
    "pf-families",
)

# params of builtin checks that hold expressions
_EXPRESSION_PARAMS = ("f", "x")


def _expressions(record: IdentityRecord) -> List[str]:
    texts = list(record.equal) + list(record.residuals)
    if record.coefficients:
        texts.append(record.coefficients.expr)
    for key in _EXPRESSION_PARAMS:
        if key in record.params:
            texts.append(record.params[key])
    texts += list(record.params.get("forms", []))
    return texts


def validate_record(record: IdentityRecord) -> None:
    if record.check and record.check not in BUILTINS:
        raise CatalogError(f"{record.id}: unknown check {record.check!r}")
    for text in _expressions(record):
        try:
            for name in free_names(text):
                descriptor(name)
        except (ExpressionSyntaxError, UnknownFormError) as exc:
            raise CatalogError(f"{record.id}: {exc}") from exc


def read_catalog(path: str) -> List[IdentityRecord]:
    try:
        with open(path) as f:
            raw = yaml.safe_load(f)
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise CatalogError(f"catalog {path} is not valid YAML: {exc}") from exc

    if not isinstance(raw, dict) or not isinstance(raw.get("records"), list):
        raise CatalogError(f"catalog {path} needs a top-level 'records' list")

    records = []
    for i, entry in enumerate(raw["records"]):
        try:
            records.append(IdentityRecord.parse_obj(entry))
        except ValidationError as exc:
            ident = entry.get("id", f"#{i}") if isinstance(entry, dict) else f"#{i}"
            raise CatalogError(f"catalog record {ident}: {exc}") from exc
    for record in records:
        validate_record(record)
    logger.debug(f"read {len(records)} records from {path}")
    return records


def _group_record(gid: str, kind: str, tier: Tier, topic: str, citation: str):
    group = GROUP_FORMS[gid]
    return IdentityRecord(
        id=f"{kind}.{gid}",
        tier=tier,
        topic=topic,
        citation=citation,
        d=group.d,
        check=kind,
        params={"group": gid},
    )


def generated_records() -> List[IdentityRecord]:
    """Records that exist once per group."""
    records = []
    for gid in GROUP_FORMS:
        records.append(
            _group_record(
                gid,
                "system",
                Tier.SYSTEM,
                "group-system",
                "width (A^rho)' = E A^rho - A^(rho(1-a)) B^(rho(1-b)), "
                "likewise B^rho, width (C^rho)' = E C^rho, "
                "width rho E' = E^2 - A^(rho(1-2a)) B^(rho(1-2b))",
            )
        )
        records.append(
            _group_record(
                gid,
                "halphen",
                Tier.SYSTEM,
                "halphen-system",
                "the logarithmic derivatives of A, B, C solve a Halphen system",
            )
        )
        records.append(
            _group_record(
                gid,
                "chazy",
                Tier.CHAZY,
                "group-chazy",
                "the u-ladder of E satisfies the group's generalized Chazy equation",
            )
        )
        records.append(
            IdentityRecord(
                id=f"picard-fuchs.group.{gid}",
                tier=Tier.PICARD_FUCHS,
                topic="pf-group",
                citation="the group's Chazy polynomial annihilates the operator's "
                "u-hat ladder and divides the weight-24 equation",
                check="pf-group",
                params={"group": gid},
            )
        )
    return records + representation_records()


def build_catalog(records: Iterable[IdentityRecord]) -> List[IdentityRecord]:
    """Generated records joined to the given ones, sorted by id."""
    combined = generated_records() + list(records)
    seen: Set[str] = set()
    for record in combined:
        if record.id in seen:
            raise CatalogError(f"duplicate record id {record.id!r}")
        seen.add(record.id)
    return sorted(combined, key=lambda r: r.id)


@lru_cache(maxsize=8)
def _load(path: str) -> List[IdentityRecord]:
    return build_catalog(read_catalog(path))


def load_catalog(path: Optional[str] = None) -> List[IdentityRecord]:
    return list(_load(path or settings.QFORMS_CATALOG))


def select(
    records: Sequence[IdentityRecord], globs: Sequence[str]
) -> List[IdentityRecord]:
    """Records whose id or tier matches any glob; all records for no globs."""
    if not globs:
        return list(records)
    return [
        r
        for r in records
        if any(fnmatch(r.id, g) or fnmatch(r.tier.value, g) for g in globs)
    ]


def missing_topics(records: Iterable[IdentityRecord]) -> List[str]:
    present = {r.topic for r in records}
    return [t for t in REQUIRED_TOPICS if t not in present]
