"""Shared plumbing: exceptions and logging."""

from .exceptions import (
    CutpathError,
    DisconnectedError,
    OutputError,
    ParsingError,
    RetryBudgetExhausted,
    SolverError,
    ValidationError,
)
from .log import CUTPATH_LOGGER, LOG_LEVEL_REPORT, configure_logging

__all__ = [
    'CUTPATH_LOGGER',
    'LOG_LEVEL_REPORT',
    'CutpathError',
    'DisconnectedError',
    'OutputError',
    'ParsingError',
    'RetryBudgetExhausted',
    'SolverError',
    'ValidationError',
    'configure_logging',
]
