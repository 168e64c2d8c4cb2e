"""
Logging for cutpath.

Library modules log through children of `CUTPATH_LOGGER`; handlers are only
ever attached by the command line.
"""
import logging

LOG_LEVEL_REPORT = 23
logging.addLevelName(LOG_LEVEL_REPORT, "REPORT")

CUTPATH_LOGGER = logging.getLogger("cutpath")

_FORMAT = "%(asctime)s <%(process)d> %(name)s: [%(levelname)s] %(message)s"


def configure_logging(verbose: bool = False) -> None:
    """Attach a stream handler to the package logger.

    Parameters
    ----------
    `verbose` : `bool`
        Log at DEBUG level if `True`, REPORT level otherwise.
    """
    level = logging.DEBUG if verbose else LOG_LEVEL_REPORT

    if not any(isinstance(h, logging.StreamHandler) for h in CUTPATH_LOGGER.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(_FORMAT, datefmt="%m/%d/%Y %I:%M:%S %p"))
        CUTPATH_LOGGER.addHandler(handler)

    CUTPATH_LOGGER.setLevel(level)
