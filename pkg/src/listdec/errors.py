"""Exception types shared across the package."""


class CodeError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatch(CodeError):
    """Operands belong to different field contexts."""


class DivisionByZero(CodeError, ZeroDivisionError):
    """Division or inversion of the zero element."""


class ParamOutOfRange(CodeError, ValueError):
    """A code or decoder parameter violates its constraints."""


class LengthMismatch(CodeError, ValueError):
    """A vector or matrix has the wrong length for the given parameters."""


class ShapeMismatch(CodeError, ValueError):
    """Two words being compared have incompatible shapes."""


class ArityMismatch(CodeError, ValueError):
    """A multivariate operation received the wrong number of variables."""


class DegreeTooLarge(CodeError, ValueError):
    """A polynomial exceeds the degree bound required by the operation."""


class BudgetExceeded(CodeError):
    """An enumeration or search exceeded its configured budget."""


class ZeroDirection(CodeError, ValueError):
    """A line restriction was requested along the zero direction."""


class ShiftRequired(CodeError):
    """Back substitution needs a coordinate translation the caller disabled."""


class IndexOverflow(CodeError):
    """The derivative operator was applied past the last carried variable."""
