"""Command-line front end: ``qcylab verify <suite> [flags]``.

Rows stream as JSON lines or CSV in registry order. Exit code 0 when every
row passes, 1 when any row fails, 2 on usage errors.
"""
from __future__ import annotations

import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from .verification import FIELDS, REGISTRY, CheckOptions, VerificationReport, run_check


def _emit(rows: list[VerificationReport], fmt: str, out) -> None:
    if fmt == "json":
        for r in rows:
            out.write(json.dumps(r.as_dict(), sort_keys=False) + "\n")
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.as_dict())
    out.write(buf.getvalue())


def _run(names: list[str], opts: CheckOptions, jobs: int) -> list[VerificationReport]:
    if jobs <= 1 or len(names) == 1:
        return [row for name in names for row in run_check(name, opts)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_check, name, opts) for name in names]
        # collect in registry order, independent of completion order
        return [row for fut in futures for row in fut.result()]


def _seed_default() -> int:
    raw = os.environ.get("QCYLAB_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"QCYLAB_SEED must be an integer, got {raw!r}")


@click.group()
def main() -> None:
    """Exact and numeric verification of the qc Yamabe expansion."""


@main.command()
@click.argument("suite", type=click.Choice(list(REGISTRY) + ["all"]))
@click.option("--n", "n", type=click.IntRange(min=1), default=1, show_default=True, help="Quaternionic dimension.")
@click.option("--seed", type=int, default=None, help="Seed; falls back to $QCYLAB_SEED, then 0.")
@click.option("--samples", type=click.IntRange(min=1000), default=100_000, show_default=True,
              help="Monte Carlo sample count.")
@click.option("--tol", type=click.FloatRange(min=0), default=None, help="Override the float tolerance of the suite.")
@click.option("--wmax", type=click.IntRange(min=6), default=6, show_default=True,
              help="Highest weight in the coframe recursion.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes.")
def verify(suite: str, n: int, seed: int | None, samples: int, tol: float | None, wmax: int, fmt: str,
           jobs: int) -> None:
    """Run one verification suite (or all) and stream the report rows."""
    seed = _seed_default() if seed is None else seed
    if suite in ("curvature-integrals", "normal-coords", "gradient") and n > 2:
        raise click.UsageError(f"{suite} supports --n 1 or 2")
    if suite == "all" and n > 2:
        raise click.UsageError("all supports --n 1 or 2")
    opts = CheckOptions(n=n, seed=seed, samples=samples, tol=tol, wmax=wmax)
    names = list(REGISTRY) if suite == "all" else [suite]
    rows = _run(names, opts, jobs)
    _emit(rows, fmt, sys.stdout)
    sys.stdout.flush()
    sys.exit(0 if all(r.status == "pass" for r in rows) else 1)


if __name__ == "__main__":
    main()
