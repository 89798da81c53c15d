"""Machine-readable tables: CSV or JSON lines, byte-for-byte deterministic."""

from __future__ import annotations

import csv
import json
import sys
from collections.abc import Iterable, Iterator, Mapping, Sequence
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Any, TextIO

from walshsum.backends.utils import format_float, format_rational
from walshsum.bounds import BoundReport, LabeledFunction
from walshsum.kernels import KernelIdentityReport

IDENTITY_COLUMNS = ("identity", "params", "mode", "verdict", "max_deviation", "witness", "detail")
NORM_COLUMNS = ("n", "norm", "decimal")
BOUND_COLUMNS = ("theorem", "n", "p", "function", "scheme", "mode", "verdict", "lhs", "rhs", "ratio", "min_constant", "detail")
CORPUS_COLUMNS = ("label", "kind", "rank", "values")


def serialize(value: Any) -> str:
    """Text form of one cell: rationals as ``p/q``, floats with 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, Mapping):
        return ";".join(f"{k}={serialize(v)}" for k, v in value.items())
    return str(value)


def decimal(value: Any, digits: int = 12) -> str:
    """Fixed-point rendering for the human-readable column."""
    if value is None:
        return ""
    return f"{float(value):.{digits}f}"


def identity_row(report: KernelIdentityReport) -> dict[str, Any]:
    """Table row of an identity check."""
    return {
        "identity": report.identity,
        "params": dict(report.params),
        "mode": report.mode,
        "verdict": report.verdict,
        "max_deviation": report.max_deviation,
        "witness": report.witness,
        "detail": report.detail,
    }


def norm_row(n: int, value: Any) -> dict[str, Any]:
    """Table row of the kernel-norm scan."""
    return {"n": n, "norm": value, "decimal": decimal(value)}


def bound_row(report: BoundReport) -> dict[str, Any]:
    """Table row of a bound check."""
    return {
        "theorem": str(report.theorem),
        "n": report.n,
        "p": report.p,
        "function": report.function,
        "scheme": report.scheme,
        "mode": report.mode,
        "verdict": report.verdict,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "ratio": report.ratio,
        "min_constant": report.min_constant,
        "detail": report.detail,
    }


def corpus_row(item: LabeledFunction) -> dict[str, Any]:
    """Table row of a generated function; values are space separated."""
    return {
        "label": item.label,
        "kind": str(item.kind),
        "rank": item.function.rank,
        "values": " ".join(serialize(v) for v in item.function.to_list()),
    }


class TableWriter:
    """Writes rows with a fixed column order in CSV or JSON-lines form.

    CSV always starts with the header, so an empty table is a header line.
    """

    def __init__(self, stream: TextIO, columns: Sequence[str], fmt: str = "csv") -> None:
        """Bind the writer to ``stream``; the CSV header is written immediately."""
        self.stream = stream
        self.columns = tuple(columns)
        self.fmt = fmt
        self.rows = 0
        self._csv = csv.writer(stream, lineterminator="\n") if fmt == "csv" else None
        if self._csv is not None:
            self._csv.writerow(self.columns)

    def write(self, row: Mapping[str, Any]) -> None:
        """Write one row; missing columns are empty."""
        cells = [serialize(row.get(c)) for c in self.columns]
        if self._csv is not None:
            self._csv.writerow(cells)
        else:
            self.stream.write(json.dumps(dict(zip(self.columns, cells, strict=True)), ensure_ascii=False) + "\n")
        self.rows += 1

    def write_all(self, rows: Iterable[Mapping[str, Any]]) -> int:
        """Write every row and return how many were written."""
        for row in rows:
            self.write(row)
        return self.rows


@contextmanager
def open_output(path: str | None) -> Iterator[TextIO]:
    """``path`` opened for writing, or stdout when ``path`` is None or ``-``."""
    if path in (None, "-"):
        yield sys.stdout
        sys.stdout.flush()
        return
    target = Path(path).expanduser()
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as stream:
        yield stream
