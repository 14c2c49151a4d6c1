"""Exception types shared across the package."""


class CharpError(Exception):
    """Base class for all library errors."""


class ZeroDenominator(CharpError):
    pass


class UnknownVariable(CharpError):
    pass


class BothZero(CharpError):
    """gcd of two zero polynomials is undefined."""


class NotAPthPower(CharpError):
    pass


class ZeroArgument(CharpError):
    """dlog of zero."""


class ZeroSlot(CharpError):
    """A slot value or generator slot must be nonzero."""


class DegreeMismatch(CharpError):
    pass


class ChainMismatch(CharpError):
    """Certificate composition requires matching endpoint presentations."""


class SameSlot(CharpError):
    pass


class ZeroElement(CharpError):
    pass


class ZeroVector(CharpError):
    pass


class SlotOutOfRange(CharpError):
    pass


class DimensionMismatch(CharpError):
    pass


class BadMultiIndex(CharpError):
    pass


class BadRange(CharpError):
    pass


class WrongCollectionSize(CharpError):
    pass


class SlotsNotShared(CharpError):
    pass


class NonConstantCoefficients(CharpError):
    """Brute-force scans require coefficients from the constant field."""


class ExplicitLeaf(CharpError):
    """Structural regularity certificates do not cover explicit tables."""


class NotInvertible(CharpError):
    pass


class SearchTooLarge(CharpError):
    pass


class ParseError(CharpError):
    def __init__(self, message, position):
        super().__init__(f"{message} (offset {position})")
        self.position = position


class UsageError(CharpError):
    pass
