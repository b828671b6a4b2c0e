"""Exception types shared by the solver and monodromy modules."""


class TTStarError(Exception):
    """Base class for all package-specific errors."""


class RegionError(TTStarError):
    """Asymptotic data lies outside the admissible triangular region."""


class SingularSystemError(TTStarError):
    """A tridiagonal solve hit a vanishing pivot."""


class ConvergenceError(TTStarError):
    """An iteration hit its sweep limit before reaching tolerance."""

    def __init__(self, message, residual=None, sweeps=None):
        super().__init__(message)
        self.residual = residual
        self.sweeps = sweeps


class MonotonicityError(TTStarError):
    """A monotone sweep left its bracket or reversed direction.

    Signals a discretisation or tolerance bug, not bad input data.
    """


class StiffnessError(TTStarError):
    """Arc integration step size underflowed."""


class OracleError(TTStarError):
    """The damped-Newton cross-check solver diverged."""
