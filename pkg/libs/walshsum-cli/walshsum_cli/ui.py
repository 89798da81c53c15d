"""Rendering of run summaries on the status console."""

from __future__ import annotations

from collections import Counter, defaultdict
from collections.abc import Iterable, Mapping, Sequence
from typing import Any

from rich import box
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from walshsum.bounds import BoundReport, EmpiricalConstant, TheoremId
from walshsum.kernels import KernelIdentityReport, KernelNormScan

from .config import COLORS, RunConfig, console
from .output import serialize

MAX_FAILURES_SHOWN = 10


def show_banner(config: RunConfig) -> None:
    """Print the command and its effective configuration."""
    console.print(f"[bold]walshsum {config.command}[/bold]", style=COLORS["primary"])
    console.print(config.echo(), style=COLORS["dim"], markup=False)
    console.print()


def _verdict_style(ok: bool) -> str:  # noqa: FBT001
    return COLORS["pass"] if ok else COLORS["fail"]


def render_identity_summary(reports: Sequence[KernelIdentityReport]) -> None:
    """One line per identity: cases, failures, largest deviation, first witness."""
    groups: dict[str, list[KernelIdentityReport]] = defaultdict(list)
    for report in reports:
        groups[report.identity].append(report)

    table = Table(box=box.SIMPLE_HEAD, title="Identity suite", title_style=COLORS["primary"])
    table.add_column("identity")
    table.add_column("cases", justify="right")
    table.add_column("failed", justify="right")
    table.add_column("max deviation", justify="right")
    table.add_column("verdict")
    for identity, items in groups.items():
        failed = [r for r in items if not r.passed]
        deviation = max(r.max_deviation for r in items)
        verdict = items[0].verdict if not failed else "fail"
        table.add_row(
            identity,
            str(len(items)),
            str(len(failed)),
            serialize(deviation),
            f"[{_verdict_style(not failed)}]{verdict}[/]",
        )
    console.print(table)

    failures = [r for r in reports if not r.passed]
    for report in failures[:MAX_FAILURES_SHOWN]:
        params = ", ".join(f"{k}={serialize(v)}" for k, v in report.params.items())
        body = f"params: {params}\nwitness: {report.witness}\nmax deviation: {serialize(report.max_deviation)}"
        if report.detail:
            body += f"\n{report.detail}"
        console.print(Panel(escape(body), title=f"{report.identity} failed", border_style=COLORS["fail"]))
    if len(failures) > MAX_FAILURES_SHOWN:
        console.print(f"... and {len(failures) - MAX_FAILURES_SHOWN} more failures", style=COLORS["fail"])


def render_norm_summary(scan: KernelNormScan, bound: Any, *, holds: bool) -> None:
    """Maximum, argmax and the bound it is checked against."""
    if not scan.entries:
        console.print("Empty range: no kernel norms computed.", style=COLORS["dim"])
        return
    maximum = scan.maximum
    console.print(
        f"max ||K_n||_1 = {serialize(maximum)} ({float(maximum):.12f}) at n = {scan.argmax}, "
        f"n <= {scan.entries[-1][0]}, rank {scan.rank}"
    )
    status = "holds" if holds else "VIOLATED"
    console.print(f"bound {serialize(bound)}: {status}", style=_verdict_style(holds))


def render_bound_summary(reports: Iterable[BoundReport], constants: Mapping[TheoremId, EmpiricalConstant]) -> None:
    """Verdict counts per theorem, then the empirical constants."""
    counts: dict[str, Counter[str]] = defaultdict(Counter)
    for report in reports:
        counts[str(report.theorem)][report.verdict] += 1

    table = Table(box=box.SIMPLE_HEAD, title="Bound sweep", title_style=COLORS["primary"])
    for column in ("theorem", "holds", "fails", "holds-with-min-constant", "hypothesis-violated"):
        table.add_column(column, justify="left" if column == "theorem" else "right")
    for theorem, counter in counts.items():
        fails = counter["fails"]
        table.add_row(
            theorem,
            str(counter["holds"]),
            f"[{_verdict_style(not fails)}]{fails}[/]",
            str(counter["holds-with-min-constant"]),
            str(counter["hypothesis-violated"]),
        )
    console.print(table)

    if constants:
        table = Table(box=box.SIMPLE_HEAD, title="Empirical constants c*", title_style=COLORS["primary"])
        for column in ("theorem", "max c*", "decimal", "cases", "attained at"):
            table.add_column(column)
        for theorem, c in constants.items():
            table.add_row(str(theorem), serialize(c.value), f"{float(c.value):.6f}", str(c.cases), escape(f"{c.function} n={c.n} p={c.p}"))
        console.print(table)
