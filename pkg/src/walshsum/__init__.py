"""Walsh-Fourier summability on the dyadic group."""

from walshsum.backends import EXACT, FLOAT, get_backend
from walshsum.bounds import TheoremId, corpus, evaluate_rhs, verify_bound
from walshsum.dyadic import DyadicPoint, LpExponent, StepFunction, lp_norm, modulus_of_continuity, walsh_coefficients
from walshsum.kernels import KernelIdentityId, kernel_l1_scan, verify_kernel_identity
from walshsum.means import TriangularRow, WeightScheme, build_row, matrix_mean, partial_sum

__all__ = [
    "EXACT",
    "FLOAT",
    "DyadicPoint",
    "KernelIdentityId",
    "LpExponent",
    "StepFunction",
    "TheoremId",
    "TriangularRow",
    "WeightScheme",
    "build_row",
    "corpus",
    "evaluate_rhs",
    "get_backend",
    "kernel_l1_scan",
    "lp_norm",
    "matrix_mean",
    "modulus_of_continuity",
    "partial_sum",
    "verify_bound",
    "verify_kernel_identity",
    "walsh_coefficients",
]
