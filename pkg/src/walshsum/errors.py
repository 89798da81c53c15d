"""Exception types raised by the walshsum library.

Verification outcomes are never reported through exceptions; verifiers return
report objects. These exceptions signal inputs the library cannot represent.
"""


class WalshsumError(ValueError):
    """Base class for all walshsum input errors."""


class RankError(WalshsumError):
    """An index or scale is not representable at the requested rank."""


class ScalarModeError(WalshsumError):
    """Unknown scalar mode, or an operation the mode cannot perform exactly."""


class SchemeError(WalshsumError):
    """Invalid or degenerate weight scheme or triangular row."""


class ParameterError(WalshsumError):
    """Parameters do not have the shape a lemma or theorem quantifies over."""


class CorpusError(WalshsumError):
    """Invalid corpus specification."""
