"""Scalar backends for exact and floating evaluation."""

from walshsum.backends.exact import ExactBackend
from walshsum.backends.floating import FloatBackend
from walshsum.backends.protocol import RootTerm, Scalar, ScalarBackend, ScalarMode
from walshsum.errors import ScalarModeError

EXACT = ExactBackend()
FLOAT = FloatBackend()


def get_backend(mode: str) -> ScalarBackend:
    """Resolve a backend by mode name (``"exact"`` or ``"float"``)."""
    if mode == "exact":
        return EXACT
    if mode == "float":
        return FLOAT
    msg = f"Unknown scalar mode {mode!r}; expected 'exact' or 'float'"
    raise ScalarModeError(msg)


__all__ = [
    "EXACT",
    "FLOAT",
    "ExactBackend",
    "FloatBackend",
    "RootTerm",
    "Scalar",
    "ScalarBackend",
    "ScalarMode",
    "get_backend",
]
