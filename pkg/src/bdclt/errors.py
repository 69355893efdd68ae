"""Exception types shared across the package."""


class DomainError(ValueError):
    """A chain specification violates the probability constraints."""


class DivergentMeasure(ArithmeticError):
    """Partial sums of the reversible weights show no convergence."""


class ToleranceNotReached(ArithmeticError):
    """Eigenvalue bisection could not bracket (NaN or corrupt input)."""


class NotInL2(ValueError):
    """An observable's squared norm keeps growing under doubling truncations."""


class SingularSystem(ArithmeticError):
    """The pinned tridiagonal solve hit a nonpositive pivot."""
