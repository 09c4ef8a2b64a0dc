import asyncio
import json
import sys
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

import click
from loguru import logger
from pydantic import BaseModel, ValidationError, validator

from qforms import settings
from qforms.app import configure_logger
from qforms.forms.expressions import ExpressionSyntaxError
from qforms.forms.registry import UnknownFormError, registry_crosschecks
from qforms.helpers import render_coefficient
from qforms.hypergeometric.families import verify_theorem_general
from qforms.identity.catalog import (
    CatalogError,
    load_catalog,
    missing_topics,
    select,
)
from qforms.identity.counting import counting_rows
from qforms.identity.models import CountingOracle, CountKind, VerdictReport
from qforms.identity.services import expand
from qforms.tasks import run_records

EXIT_FAILED, EXIT_UNKNOWN_FORM, EXIT_CATALOG = 1, 2, 3

SIGNED_64 = 2**63


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class ConfigFileError(Exception):
    pass


class RunConfig(BaseModel):
    # None keeps each record's own precision
    order: Optional[Fraction] = None
    field: int = 0
    suite: List[str] = []
    jobs: int
    format: OutputFormat = OutputFormat.TEXT
    seed: int
    samples: int
    timings: bool = False
    catalog: str

    class Config:
        arbitrary_types_allowed = True

    @validator("order", pre=True)
    def positive_order(cls, v):
        if v is None:
            return None
        order = Fraction(str(v))
        if order <= 0:
            raise ValueError("order must be positive")
        return order

    @validator("suite", pre=True)
    def split_suite(cls, v):
        if isinstance(v, str):
            return [s.strip() for s in v.split(",") if s.strip()]
        return list(v)

    @validator("jobs", "samples")
    def at_least_one(cls, v):
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @validator("seed")
    def sixty_four_bits(cls, v):
        if not -SIGNED_64 <= v < SIGNED_64:
            raise ValueError("seed must fit in 64 bits")
        return v

    def overrides(self) -> Dict[str, Any]:
        """Settings a worker process needs to match this run."""
        return {
            "QFORMS_SEED": self.seed,
            "QFORMS_PF_SAMPLES": self.samples,
            "QFORMS_CATALOG": self.catalog,
        }


def read_config_file(path: str) -> Dict[str, str]:
    """key=value lines; '#' starts a comment."""
    values = {}
    with open(path) as f:
        for number, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigFileError(f"{path}:{number}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in RunConfig.__fields__:
                raise ConfigFileError(f"{path}:{number}: unknown key {key!r}")
            values[key] = value
    return values


def run_config(config: Optional[str] = None, **flags) -> RunConfig:
    """Settings, then the config file, then flags that were given."""
    merged: Dict[str, Any] = {
        "jobs": settings.QFORMS_JOBS,
        "seed": settings.QFORMS_SEED,
        "samples": settings.QFORMS_PF_SAMPLES,
        "catalog": settings.QFORMS_CATALOG,
    }
    if config:
        merged.update(read_config_file(config))
    merged.update({k: v for k, v in flags.items() if v is not None and v != ()})
    return RunConfig.parse_obj(merged)


def _config_or_exit(config: Optional[str], **flags) -> RunConfig:
    try:
        return run_config(config, **flags)
    except (ConfigFileError, ValidationError) as exc:
        raise click.UsageError(str(exc))


def _emit(payload: Any) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


config_option = click.option(
    "--config",
    type=click.Path(exists=True, dir_okay=False),
    help="key=value file; flags win over it",
)
format_option = click.option(
    "--format", "format_", type=click.Choice(["text", "json"]), default=None
)


@click.group()
@click.option("--verbose", is_flag=True, help="debug logging")
def main(verbose: bool):
    """Exact q-series verification of modular form identities."""
    configure_logger(verbose)


@main.command("expand")
@click.argument("form")
@click.option("--order", type=str, default=None, help="expand to O(q^order)")
@click.option("--field", type=int, default=None, help="discriminant d, w^2 = d")
@format_option
@config_option
def cmd_expand(form, order, field, format_, config):
    """Print the coefficients of a registry name or prefix expression."""
    run = _config_or_exit(config, order=order, field=field, format=format_)
    precision = run.order or settings.QFORMS_PRECISION
    try:
        series = expand(form, precision, run.field)
    except UnknownFormError as exc:
        logger.error(str(exc))
        sys.exit(EXIT_UNKNOWN_FORM)
    except ExpressionSyntaxError as exc:
        logger.error(f"cannot parse {form!r}: {exc}")
        sys.exit(EXIT_UNKNOWN_FORM)
    except Exception:
        logger.exception(f"cannot expand {form!r}")
        sys.exit(EXIT_FAILED)

    terms = [(str(e), render_coefficient(c)) for e, c in series.terms()]
    if run.format == OutputFormat.JSON:
        _emit(
            {
                "form": form,
                "d": series.d,
                "order": str(precision),
                "coefficients": [[e, c] for e, c in terms],
            }
        )
        return
    field_name = "Q" if not series.d else f"Q(w), w^2 = {series.d}"
    click.echo(f"# {form} over {field_name}, to O(q^{precision})")
    for exponent, coefficient in terms:
        click.echo(f"{exponent} {coefficient}")


def _text_report(report: VerdictReport, timings: bool) -> str:
    status = "PASS" if report.passed else "FAIL"
    line = f"{status} {report.id}"
    if timings and report.millis is not None:
        line += f" ({report.millis} ms)"
    failure = report.first_failure
    if report.error:
        line += f"\n    error: {report.error}"
    elif failure:
        line += (
            f"\n    first failure at q^{failure.exponent}: "
            f"{failure.lhs} != {failure.rhs}"
        )
    return line


@main.command("verify")
@click.option("--suite", multiple=True, help="id or tier glob, repeatable")
@click.option("--order", type=str, default=None, help="override every precision")
@click.option("--jobs", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--timings", is_flag=True, default=None)
@format_option
@config_option
def cmd_verify(suite, order, jobs, seed, timings, format_, config):
    """Run the catalog records matching the suite globs."""
    run = _config_or_exit(
        config,
        suite=list(suite) or None,
        order=order,
        jobs=jobs,
        seed=seed,
        timings=timings or None,
        format=format_,
    )
    try:
        records = load_catalog(run.catalog)
    except CatalogError as exc:
        logger.error(str(exc))
        sys.exit(EXIT_CATALOG)

    if not run.suite:
        for topic in missing_topics(records):
            logger.warning(f"catalog has no record for topic {topic!r}")
    chosen = select(records, run.suite)
    if not chosen:
        logger.warning(f"no records match {', '.join(run.suite)}")

    reports = asyncio.run(run_records(chosen, run.jobs, run.order, run.overrides()))

    if run.format == OutputFormat.JSON:
        _emit([r.summary(run.timings) for r in reports])
    else:
        for report in reports:
            click.echo(_text_report(report, run.timings))

    failed = [r for r in reports if not r.passed]
    if failed:
        logger.error(f"{len(failed)} of {len(reports)} records failed")
        sys.exit(EXIT_FAILED)
    if reports:
        logger.success(f"{len(reports)} records passed")


@main.command("counts")
@click.argument("kind", type=click.Choice(["squares", "triangles"]))
@click.option("--s", "s", type=click.IntRange(1, 4), required=True)
@click.option("--max-n", type=click.IntRange(min=1), default=None)
@format_option
@config_option
def cmd_counts(kind, s, max_n, format_, config):
    """Lattice counts against theta coefficients and divisor formulas."""
    run = _config_or_exit(config, format=format_)
    oracle = CountingOracle(
        kind=kind, s=s, max_n=max_n or settings.QFORMS_COUNTING_MAX_N
    )
    rows = counting_rows(oracle)
    labels = list(rows[-1].formulas)

    if run.format == OutputFormat.JSON:
        _emit(
            [
                {
                    "n": row.n,
                    "lattice": row.lattice,
                    "nonnegative": row.nonnegative,
                    "theta": str(row.theta),
                    "formulas": {k: str(v) for k, v in row.formulas.items()},
                    "agrees": row.agrees,
                }
                for row in rows
            ]
        )
    else:
        header = ["n", oracle.label]
        if oracle.kind == CountKind.TRIANGLES:
            header.append("m>=0")
        header += ["theta"] + labels + ["agree"]
        click.echo("\t".join(header))
        for row in rows:
            cells = [str(row.n), str(row.lattice)]
            if row.nonnegative is not None:
                cells.append(str(row.nonnegative))
            cells.append(str(row.theta))
            cells += [str(row.formulas.get(k, "-")) for k in labels]
            cells.append("yes" if row.agrees else "NO")
            click.echo("\t".join(cells))

    if not all(row.agrees for row in rows):
        sys.exit(EXIT_FAILED)


@main.command("pf-check")
@click.option("--samples", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=int, default=None)
@format_option
@config_option
def cmd_pf_check(samples, seed, format_, config):
    """Sample the weight-24 Chazy equation and check the parametrized families."""
    run = _config_or_exit(config, samples=samples, seed=seed, format=format_)
    report = verify_theorem_general(run.samples, run.seed)

    by_family: Dict[str, List[bool]] = {}
    for result in report.families:
        by_family.setdefault(result.label.split(" ")[0], []).append(result.passed)
    summary = {
        "general": {
            "zero": sum(s.passed for s in report.samples),
            "samples": len(report.samples),
            "seed": run.seed,
        },
        "families": {
            name: {"zero": sum(passed), "cases": len(passed)}
            for name, passed in sorted(by_family.items())
        },
        "identities": report.identities,
        "factorization": report.factorization,
        "pass": report.passed,
    }

    if run.format == OutputFormat.JSON:
        _emit(summary)
    else:
        general = summary["general"]
        click.echo(
            f"general: {general['zero']}/{general['samples']} residuals zero "
            f"(seed {run.seed})"
        )
        for name, counts in summary["families"].items():
            click.echo(f"{name}: {counts['zero']}/{counts['cases']} residuals zero")
        for label, passed in report.identities.items():
            click.echo(f"{'ok' if passed else 'FAILED'} {label}")
        click.echo(
            f"{'ok' if report.factorization else 'FAILED'} "
            "general(1/2, 0, 0) = u6^2 p4 / 32"
        )

    if not report.passed:
        sys.exit(EXIT_FAILED)
    logger.success("every sampled and family residual is zero")


@main.command("crosscheck")
@click.argument("names", nargs=-1)
@click.option("--order", type=str, default=None)
@format_option
@config_option
def cmd_crosscheck(names, order, format_, config):
    """Compare every construction route of the registry forms."""
    run = _config_or_exit(config, order=order, format=format_)
    try:
        checks = registry_crosschecks(run.order, list(names) or None)
    except UnknownFormError as exc:
        logger.error(str(exc))
        sys.exit(EXIT_UNKNOWN_FORM)
    except Exception:
        logger.exception("crosscheck aborted")
        sys.exit(EXIT_FAILED)

    if run.format == OutputFormat.JSON:
        _emit(
            [
                {
                    "form": c.form,
                    "route": c.route,
                    "pass": c.passed,
                    "exponent": None if c.exponent is None else str(c.exponent),
                }
                for c in checks
            ]
        )
    else:
        for c in checks:
            line = f"{'PASS' if c.passed else 'FAIL'} {c.form} {c.route}"
            if not c.passed:
                line += f" at q^{c.exponent}: {c.expected} != {c.found}"
            click.echo(line)

    if not all(c.passed for c in checks):
        sys.exit(EXIT_FAILED)
