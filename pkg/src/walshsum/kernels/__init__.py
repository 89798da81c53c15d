"""Walsh-system kernels and the exhaustive checks of their lemmas."""

from walshsum.kernels.construct import (
    combine,
    dirichlet_kernel,
    dirichlet_table,
    fejer_kernel,
    fejer_table,
    matrix_kernel,
    rademacher_function,
    walsh_function,
    walsh_table,
)
from walshsum.kernels.identities import (
    TOLEDO_BOUND,
    YANO_BOUND,
    KernelIdentityId,
    KernelNormScan,
    LemmaGrid,
    blahota_decomposition,
    iter_reports,
    kernel_l1_scan,
    verify_all,
    verify_kernel_identity,
)
from walshsum.kernels.report import KernelIdentityReport

__all__ = [
    "TOLEDO_BOUND",
    "YANO_BOUND",
    "KernelIdentityId",
    "KernelIdentityReport",
    "KernelNormScan",
    "LemmaGrid",
    "blahota_decomposition",
    "combine",
    "dirichlet_kernel",
    "dirichlet_table",
    "fejer_kernel",
    "fejer_table",
    "iter_reports",
    "kernel_l1_scan",
    "matrix_kernel",
    "rademacher_function",
    "verify_all",
    "verify_kernel_identity",
    "walsh_function",
    "walsh_table",
]
