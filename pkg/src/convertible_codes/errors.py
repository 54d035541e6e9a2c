"""
Exception hierarchy for convertible code construction, conversion and checks.
"""


class ConvertibleCodeError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatchError(ConvertibleCodeError, ValueError):
    """Operands belong to different finite fields."""


class PreconditionError(ConvertibleCodeError, ValueError):
    """A parameter, field-size, divisibility or shape requirement is violated."""


class SingularMatrixError(ConvertibleCodeError, ArithmeticError):
    """A matrix that must be invertible (or of full column rank) is not."""


class InconsistentSystemError(ConvertibleCodeError, ArithmeticError):
    """An overdetermined linear system has no solution."""


class InconsistentErasuresError(ConvertibleCodeError, ValueError):
    """Known code symbols do not agree with any single codeword."""


class InvalidCodewordError(ConvertibleCodeError, ValueError):
    """A word handed to a conversion is not a codeword of the initial code."""


class BruteForceLimitError(ConvertibleCodeError, RuntimeError):
    """An exhaustive check would exceed the configured enumeration cap."""


class DescriptorError(ConvertibleCodeError, ValueError):
    """A JSON artifact is malformed or of the wrong kind."""
