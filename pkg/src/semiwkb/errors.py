"""Exception hierarchy shared by the solver modules."""


class SemiWkbError(Exception):
    """Base class for all solver failures."""


class DomainError(SemiWkbError, ValueError):
    """An argument lies outside the domain of the operation (e.g. r <= 0)."""


class InvalidQuantumNumbers(SemiWkbError, ValueError):
    pass


class SupercriticalCouplingError(SemiWkbError):
    """Vector Coulomb coupling with alpha > l + 1/2 (complex Lambda)."""


class NonNormalizableError(SemiWkbError):
    """Vector-like confinement has no normalizable bound states."""


class NoBoundRegionError(SemiWkbError):
    """p^2(r) <= 0 for every r > 0 at the requested energy."""


class NoBoundStateError(SemiWkbError):
    pass


class ConvergenceError(SemiWkbError):
    """A quadrature or root search exhausted its budget.

    ``estimate`` carries the best error estimate reached, when one exists.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class DegenerateFitError(SemiWkbError, ValueError):
    pass


class UnphysicalError(SemiWkbError):
    """A closed form produced a negative squared energy or mass."""


class UsageError(SemiWkbError, ValueError):
    """An operation was called on a spec it does not support."""
