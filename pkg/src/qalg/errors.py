"""Exception types shared across the package."""


class QalgError(Exception):
    """Base class for all package errors."""


class CapacityError(QalgError):
    """Requested register exceeds the amplitude-count cap."""


class ValidationError(QalgError, ValueError):
    """Input fails a structural check (non-unitary matrix, bad arity, ...)."""


class DimensionError(QalgError, ValueError):
    """Operands have incompatible sizes."""


class ArgumentError(QalgError, ValueError):
    """Argument outside the documented domain."""


class NotInvertibleError(QalgError, ValueError):
    """Modular inverse requested for non-coprime operands."""


class PromiseViolationError(QalgError):
    """Oracle input does not satisfy the algorithm's promise."""


class InconclusiveError(QalgError):
    """Algorithm exhausted its attempt budget without a verified answer."""


class ConditioningError(QalgError):
    """Matrix too ill-conditioned for a reliable inverse."""


class NullResultError(QalgError):
    """Post-selected branch has (numerically) zero probability."""


class ImpossibleOutcomeError(QalgError):
    """Projection onto a zero-probability measurement branch."""
