"""Exception hierarchy shared by all subpackages."""


class FineSelmerError(ValueError):
    """Base class for invalid input and precision failures."""


class PrimeMismatch(FineSelmerError):
    pass


class PrecisionError(FineSelmerError):
    """Raised when the available precision cannot determine a result."""


class ZeroWithinPrecision(PrecisionError):
    pass


class InsufficientXPrecision(PrecisionError):
    pass


class NotTorsion(FineSelmerError):
    pass


class NotStabilized(FineSelmerError):
    pass


class WindowTooSmall(FineSelmerError):
    pass


class InconsistentLedger(FineSelmerError):
    pass


class NonIntegralExponent(FineSelmerError):
    pass


class DecreasingRank(FineSelmerError):
    pass


class NotCoprime(FineSelmerError):
    pass


class NotSquareFree(FineSelmerError):
    pass


class InadmissibleQuery(FineSelmerError):
    pass
