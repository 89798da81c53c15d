"""Weight schemes, triangular rows and the summability means built on them."""

from walshsum.means.rows import (
    RowClass,
    TriangularRow,
    WeightScheme,
    build_row,
    classify_row,
    random_row,
)
from walshsum.means.summation import (
    RegularityEntry,
    abel_decomposition_check,
    abel_weights,
    fejer_mean,
    matrix_mean,
    matrix_mean_by_convolution,
    mean_from_coefficients,
    norlund_mean,
    partial_sum,
    regularity_diagnostics,
    weighted_mean,
)

__all__ = [
    "RegularityEntry",
    "RowClass",
    "TriangularRow",
    "WeightScheme",
    "abel_decomposition_check",
    "abel_weights",
    "build_row",
    "classify_row",
    "fejer_mean",
    "matrix_mean",
    "matrix_mean_by_convolution",
    "mean_from_coefficients",
    "norlund_mean",
    "partial_sum",
    "random_row",
    "regularity_diagnostics",
    "weighted_mean",
]
