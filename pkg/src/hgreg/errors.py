"""Exception hierarchy shared by every module."""


class HGRegError(Exception):
    """Base class for all toolkit errors."""


class PoleError(HGRegError, ValueError):
    """Argument sits on a pole of the function being evaluated."""


class ConvergenceError(HGRegError, ArithmeticError):
    """An iterative scheme failed to meet its tolerance."""


class DomainError(HGRegError, ValueError):
    """Input outside the documented domain of an operation."""


class DivergenceError(DomainError):
    """Series evaluated outside its disc of convergence."""


class BranchMismatchError(HGRegError):
    """Two evaluation methods disagree by more than a branch ambiguity."""


class ExtrapolationError(ConvergenceError):
    """Richardson levels in a degenerate-parameter limit disagree."""


class BadPrimeError(DomainError):
    """Prime of bad reduction passed where a good prime is required."""


class AmbiguousConductorError(HGRegError):
    """No conductor candidate passes the functional-equation test."""


class StepLimitError(HGRegError):
    """Rewriting system exceeded its step budget."""


class RetryExhaustedError(HGRegError):
    """Random sampling found no admissible point within its draw budget."""


class DegenerateFrameError(HGRegError, ArithmeticError):
    """A sampled tangent frame is numerically singular."""
