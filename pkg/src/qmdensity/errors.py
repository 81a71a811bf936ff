class QMError(Exception):
    """Base class for engine errors."""


class ValidationError(QMError, ValueError):
    """An input violates a structural contract (shape, Hermiticity, trace...)."""


class ZeroProbabilityError(QMError):
    """Conditioning on a measurement branch that has (numerically) zero probability."""


class InvariantError(QMError, AssertionError):
    """An internal consistency check failed; indicates an engine defect."""
