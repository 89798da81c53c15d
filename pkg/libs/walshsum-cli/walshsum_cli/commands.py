"""Command handlers. Each returns the process exit status."""

from __future__ import annotations

import logging

from walshsum.backends import get_backend
from walshsum.bounds import LabeledFunction, TheoremId, empirical_constants, full_corpus, plan_cases, run_sweep
from walshsum.kernels import TOLEDO_BOUND, KernelIdentityId, LemmaGrid, iter_reports, kernel_l1_scan
from walshsum.means import WeightScheme
from walshsum.selection import select_ids

from .config import RunConfig
from .output import (
    BOUND_COLUMNS,
    CORPUS_COLUMNS,
    IDENTITY_COLUMNS,
    NORM_COLUMNS,
    TableWriter,
    bound_row,
    corpus_row,
    identity_row,
    norm_row,
    open_output,
)
from .ui import render_bound_summary, render_identity_summary, render_norm_summary

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1


def cmd_lemmas(config: RunConfig, *, inject_fault: bool = False) -> int:
    """Run the kernel identity suite over the configured n range.

    Exit status is 0 iff every check passes.
    """
    backend = get_backend(config.mode)
    grid = LemmaGrid(
        n_min=config.n_min,
        n_max=config.n_max,
        rank=config.rank,
        blahota_rows=config.blahota_rows,
        blahota_stride=config.blahota_stride,
        seed=config.seed,
        identities=select_ids(KernelIdentityId, config.only),
    )
    reports = []
    with open_output(config.out) as stream:
        writer = TableWriter(stream, IDENTITY_COLUMNS, config.format)
        for report in iter_reports(grid, backend=backend, fault=inject_fault):
            writer.write(identity_row(report))
            reports.append(report)
    render_identity_summary(reports)
    failed = sum(not r.passed for r in reports)
    logger.info("%d identity checks, %d failed", len(reports), failed)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_kernel_norms(config: RunConfig) -> int:
    """Tabulate ||K_n||_1 for n <= n_max; exit 1 if any exceeds 17/15."""
    backend = get_backend(config.mode)
    scan = kernel_l1_scan(config.n_max, backend=backend)
    entries = [(n, v) for n, v in scan.entries if n >= config.n_min]
    with open_output(config.out) as stream:
        TableWriter(stream, NORM_COLUMNS, config.format).write_all(norm_row(n, v) for n, v in entries)
    bound = backend.scalar(TOLEDO_BOUND)
    holds = all(backend.less_equal(v, bound) for _, v in entries)
    render_norm_summary(scan, bound, holds=holds)
    return EXIT_OK if holds else EXIT_FAILED


def _corpus(config: RunConfig) -> list[LabeledFunction]:
    ranks = (config.rank,) if config.rank is not None else config.corpus_ranks
    return full_corpus(
        ranks,
        config.seed,
        count=config.corpus_count,
        betas=config.beta,
        kinds=config.corpus_kind,
        backend=get_backend(config.mode),
    )


def cmd_bounds(config: RunConfig) -> int:
    """Sweep the selected theorems; exit 1 iff a bound with a decidable constant fails.

    ``hypothesis-violated`` rows are informational and never affect the status.
    """
    schemes = [WeightScheme.parse(text) for text in config.scheme]
    plan = plan_cases(
        select_ids(TheoremId, config.only),
        _corpus(config),
        schemes,
        range(config.n_min, config.n_max + 1),
        config.p,
    )
    reports = run_sweep(plan, workers=config.workers)
    with open_output(config.out) as stream:
        TableWriter(stream, BOUND_COLUMNS, config.format).write_all(bound_row(r) for r in reports)
    render_bound_summary(reports, empirical_constants(reports))
    return EXIT_FAILED if any(r.failed for r in reports) else EXIT_OK


def cmd_corpus(config: RunConfig) -> int:
    """Dump the generated functions, one row per function."""
    with open_output(config.out) as stream:
        TableWriter(stream, CORPUS_COLUMNS, config.format).write_all(corpus_row(item) for item in _corpus(config))
    return EXIT_OK
