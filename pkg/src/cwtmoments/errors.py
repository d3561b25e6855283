"""Exception types shared across the package."""


class CwtMomentsError(Exception):
    """Base class for package errors."""


class DerivativeOrderError(CwtMomentsError, ValueError):
    """Requested derivative order exceeds the wavelet's configured maximum."""


class MomentDivergenceError(CwtMomentsError, ValueError):
    """A moment does not exist (or did not converge) for the declared growth class."""

    def __init__(self, message, growth_class=None, order=None):
        super().__init__(message)
        self.growth_class = growth_class
        self.order = order


class TruncationOrderError(CwtMomentsError, ValueError):
    """Expansion order exceeds the cap implied by the input's growth class."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class QuadratureNonConvergence(CwtMomentsError, RuntimeError):
    """Adaptive integration exhausted its budget; carries the best estimate."""

    def __init__(self, message, best_estimate, err_estimate):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.err_estimate = err_estimate


class InsufficientDataError(CwtMomentsError, ValueError):
    """Too few usable points for an order fit."""


class EmptyWindowError(CwtMomentsError, ValueError):
    """The seminorm window is empty for the given (a, b, M)."""


class ScenarioError(CwtMomentsError, ValueError):
    """Scenario file failed to parse or validate; carries a line number."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line

    def __str__(self):
        base = super().__str__()
        if self.line is not None:
            return f"line {self.line}: {base}"
        return base
