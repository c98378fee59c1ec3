"""Exception types shared across the package."""


class ThresholdViolation(ValueError):
    """A requested state does not exist at the given frequency or mass."""


class UndefinedLimit(ValueError):
    """The requested family/limit combination has no limit to study."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested absolute tolerance."""
