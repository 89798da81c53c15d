"""Approximation theorems for matrix-transform means and their sweeps."""

from walshsum.bounds.corpus import CorpusKind, LabeledFunction, corpus, full_corpus
from walshsum.bounds.reports import (
    BoundReport,
    BoundVerdict,
    SharpeningComparison,
    approximation_error,
    sharpening_comparison,
    translation_average_check,
    verify_bound,
)
from walshsum.bounds.sweep import BoundCase, EmpiricalConstant, SweepPlan, empirical_constants, plan_cases, run_sweep, sweep_rank
from walshsum.bounds.theorems import (
    SPECIFIED,
    TNN_CONSTANT,
    BoundTerm,
    RhsBreakdown,
    TheoremId,
    evaluate_rhs,
    hypothesis_violations,
)

__all__ = [
    "SPECIFIED",
    "TNN_CONSTANT",
    "BoundCase",
    "BoundReport",
    "BoundTerm",
    "BoundVerdict",
    "CorpusKind",
    "EmpiricalConstant",
    "LabeledFunction",
    "RhsBreakdown",
    "SharpeningComparison",
    "SweepPlan",
    "TheoremId",
    "approximation_error",
    "corpus",
    "empirical_constants",
    "evaluate_rhs",
    "full_corpus",
    "hypothesis_violations",
    "plan_cases",
    "run_sweep",
    "sharpening_comparison",
    "sweep_rank",
    "translation_average_check",
    "verify_bound",
]
