"""Exception hierarchy.

Every error carries a ``kind`` string; the CLI reports it verbatim in its
structured stderr output.
"""


class DaglimError(Exception):
    kind = "DaglimError"


class BackendMismatch(DaglimError):
    kind = "BackendMismatch"


class UnsupportedOperation(DaglimError):
    kind = "UnsupportedOperation"


class NegativeInput(DaglimError):
    kind = "NegativeInput"


class ObjectMismatch(DaglimError):
    kind = "ObjectMismatch"


class NotEndomorphism(DaglimError):
    kind = "NotEndomorphism"


class DimensionMismatch(DaglimError):
    kind = "DimensionMismatch"


class UnknownObject(DaglimError):
    kind = "UnknownObject"


class NotAForest(DaglimError):
    kind = "NotAForest"


class WrongShape(DaglimError):
    kind = "WrongShape"


class ClosureDiverged(DaglimError):
    kind = "ClosureDiverged"


class UnsupportedOmega(DaglimError):
    kind = "UnsupportedOmega"


class EmptyFamily(DaglimError):
    kind = "EmptyFamily"


class NotIsometry(DaglimError):
    kind = "NotIsometry"


class NotComparable(DaglimError):
    kind = "NotComparable"


class NotAState(DaglimError):
    kind = "NotAState"


class ZeroDenominator(DaglimError):
    kind = "ZeroDenominator"


class ZeroInverse(DaglimError):
    kind = "ZeroInverse"


class InvalidInput(DaglimError):
    """Malformed file or argument content."""

    kind = "InvalidInput"
