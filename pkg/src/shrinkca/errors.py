"""Exception hierarchy shared by all modules."""


class ShrinkCAError(Exception):
    """Base class for every error raised by this package."""


class PolynomialFormatError(ShrinkCAError, ValueError):
    pass


class NonPrimitivePolynomial(ShrinkCAError, ValueError):
    pass


class DegreeOutOfRange(ShrinkCAError, ValueError):
    pass


class ExponentOutOfRange(ShrinkCAError, ValueError):
    pass


class ZeroState(ShrinkCAError, ValueError):
    pass


class IndexOutOfRange(ShrinkCAError, IndexError):
    pass


class InvalidConfig(ShrinkCAError, ValueError):
    pass


class NotDecomposable(ShrinkCAError, ValueError):
    pass


class InconsistentOffsets(ShrinkCAError, ValueError):
    pass


class NotAnMSequence(ShrinkCAError, ValueError):
    pass


class ColumnOutOfRange(ShrinkCAError, IndexError):
    pass


class DegenerateDifference(ShrinkCAError, ValueError):
    """Two offsets coincide, so their Zech difference is the zero exponent."""


class BadCandidate(ShrinkCAError, ValueError):
    pass


class InsufficientBits(ShrinkCAError, ValueError):
    pass


class SearchSpaceTooLarge(ShrinkCAError, ValueError):
    pass


class BudgetExceeded(ShrinkCAError, RuntimeError):
    pass


class OverlapConflict(ShrinkCAError, RuntimeError):
    """Two recovered copies of the same CA cell disagree."""
