"""
Exceptions raised by cutpath.

The command line maps `ValidationError` (and its subclasses) to exit
status 1 and every other `CutpathError` to exit status 2.
"""


class CutpathError(Exception):
    """Base class for all cutpath exceptions."""


class ValidationError(CutpathError, ValueError):
    """Raised when inputs violate the documented preconditions."""


class DisconnectedError(ValidationError):
    """Raised when two terminals do not share a connected component."""


class ParsingError(ValidationError):
    """Raised when a graph, trace or config file is malformed."""


class SolverError(CutpathError):
    """Raised when a linear solve does not reach the requested tolerance."""


class RetryBudgetExhausted(CutpathError):
    """Raised when a rejection sampler runs out of attempts."""


class OutputError(CutpathError):
    """Raised when results cannot be written."""
