"""Structured results of exhaustive identity checks.

Checks return a KernelIdentityReport instead of raising, so callers can print
a witness cell, aggregate per identity and decide exit codes themselves.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np

from walshsum.backends import Scalar, ScalarBackend

Verdict = Literal["exact-pass", "pass", "fail"]


@dataclass(frozen=True)
class KernelIdentityReport:
    """Outcome of checking one identity or inequality for one parameter set.

    Attributes:
        identity: Identity id (a ``KernelIdentityId`` value, or ``"ABEL"``).
        params: Parameters the check quantified over (n, k, m, rank, ...).
        mode: Scalar mode the check ran in.
        passed: True when the relation held on every cell (or for the norm).
        max_deviation: For equalities, the largest |lhs - rhs|. For inequalities,
            the largest lhs - rhs, which is <= 0 when the check passes.
        witness: First failing cell index (or n for norm checks); None on success.
        detail: Free-form context, e.g. the scalar side of a two-part identity.
    """

    identity: str
    params: Mapping[str, Any]
    mode: str
    passed: bool
    max_deviation: Scalar
    witness: int | None = None
    detail: str = field(default="", compare=False)

    @property
    def verdict(self) -> Verdict:
        """``exact-pass`` in exact mode, ``pass`` in float mode, or ``fail``."""
        if not self.passed:
            return "fail"
        return "exact-pass" if self.mode == "exact" else "pass"


def perturb(values: np.ndarray, backend: ScalarBackend) -> np.ndarray:
    """Copy of ``values`` with one added to cell 0 (test-only fault injection)."""
    out = np.array(values, copy=True)
    out[0] = out[0] + backend.scalar(1)
    return out


def compare_equal(
    identity: str,
    params: Mapping[str, Any],
    lhs: np.ndarray,
    rhs: np.ndarray,
    backend: ScalarBackend,
    *,
    fault: bool = False,
    detail: str = "",
) -> KernelIdentityReport:
    """Cellwise equality of two backend arrays of equal length."""
    if fault:
        lhs = perturb(lhs, backend)
    deviations = [abs(a - b) for a, b in zip(lhs, rhs, strict=True)]
    failing = [i for i, (a, b) in enumerate(zip(lhs, rhs, strict=True)) if not backend.equal(a, b)]
    return KernelIdentityReport(
        identity=str(identity),
        params=dict(params),
        mode=backend.name,
        passed=not failing,
        max_deviation=backend.scalar(max(deviations, default=0)),
        witness=failing[0] if failing else None,
        detail=detail,
    )


def compare_less_equal(
    identity: str,
    params: Mapping[str, Any],
    lhs: np.ndarray,
    rhs: np.ndarray,
    backend: ScalarBackend,
    *,
    fault: bool = False,
    detail: str = "",
) -> KernelIdentityReport:
    """Cellwise ``lhs <= rhs``; a scalar inequality is a length-one array."""
    if fault:
        lhs = perturb(lhs, backend)
    excess = [a - b for a, b in zip(lhs, rhs, strict=True)]
    failing = [i for i, (a, b) in enumerate(zip(lhs, rhs, strict=True)) if not backend.less_equal(a, b)]
    return KernelIdentityReport(
        identity=str(identity),
        params=dict(params),
        mode=backend.name,
        passed=not failing,
        max_deviation=backend.scalar(max(excess, default=0)),
        witness=failing[0] if failing else None,
        detail=detail,
    )
