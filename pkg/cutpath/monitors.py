"""
Bound checks.

Every verdict is logged at REPORT level and returned as a `BoundReport`.
"""
from __future__ import annotations

from typing import Optional, Sequence, Union

import numpy as np

from . import helpers
from .common.log import CUTPATH_LOGGER, LOG_LEVEL_REPORT
from .schemas.report import BoundReport

LOGGER = CUTPATH_LOGGER.getChild("monitors")


def check_bound(
    quantity: str,
    value: float,
    bound: float,
    half_width: Optional[float] = None,
    conservative: bool = False,
    strict: bool = False,
    **parameters: Union[int, float, str],
) -> BoundReport:
    """Compare `value` and its 3 sigma half-width with `bound`.

    Parameters
    ----------
    `quantity` : `str`
        Name of the checked quantity.
    `value` : `float`
        Exact value or empirical mean.
    `bound` : `float`
        The proved upper bound.
    `half_width` : `Optional[float]`
        The 3 sigma half-width when `value` is empirical.
    `conservative` : `bool`
        Count the half-width against `value` rather than as slack.
    `strict` : `bool`
        Require a strict inequality.
    `parameters` : `int | float | str`
        Parameters echoed into the report.

    Returns
    -------
    `BoundReport`
        The verdict.
    """
    report = BoundReport(
        quantity=quantity,
        value=value,
        bound=bound,
        half_width=half_width,
        conservative=conservative,
        strict=strict,
        parameters=parameters,
    )

    margin = f" +/- {half_width:.3g}" if half_width is not None else ""
    relation = "<" if strict else "<="
    message = f"{quantity}: {value:.6g}{margin} {relation} {bound:.6g}"
    if report.satisfied:
        LOGGER.log(LOG_LEVEL_REPORT, f"{message} - satisfied")
    else:
        LOGGER.warning(f"{message} - VIOLATED ({parameters})")

    return report


def summarize(reports: list[BoundReport]) -> dict:
    """Count satisfied and violated reports per quantity."""
    summary: dict[str, dict[str, int]] = {}
    for report in reports:
        counts = summary.setdefault(report.quantity, {"satisfied": 0, "violated": 0})
        counts["satisfied" if report.satisfied else "violated"] += 1
    return summary


def check_nonincreasing(
    quantity: str,
    keys: Sequence[int],
    means: Sequence[float],
    half_widths: Sequence[float],
    key: str = "k",
) -> list[BoundReport]:
    """Trend check: every mean stays below its predecessor, within both half-widths.

    Pairs with an undefined mean are skipped.
    """
    reports = []
    for n in range(1, len(keys)):
        if np.isnan(means[n]) or np.isnan(means[n - 1]):
            continue
        margin = np.nan_to_num(half_widths[n]) + np.nan_to_num(half_widths[n - 1])
        reports.append(
            check_bound(
                quantity,
                float(means[n]),
                float(means[n - 1]),
                half_width=float(margin),
                **{key: int(keys[n])},
            ))
    return reports


def check_increasing(
    quantity: str,
    keys: Sequence[int],
    samples: Sequence[Sequence[float]],
    key: str = "k",
) -> list[BoundReport]:
    """Paired trend check: `samples[n]` strictly exceeds `samples[n - 1]`.

    `samples[n][r]` is the value of replica `r` at `keys[n]`. The check
    passes when the 3 sigma upper end of the mean of `samples[n - 1] -
    samples[n]` is negative, so equal samples fail.
    """
    reports = []
    for n in range(1, len(keys)):
        drop = np.asarray(samples[n - 1], dtype=float) - np.asarray(samples[n], dtype=float)
        reports.append(
            check_bound(
                quantity,
                float(drop.mean()),
                0.0,
                half_width=helpers.half_width(drop),
                conservative=True,
                strict=True,
                **{key: int(keys[n])},
            ))
    return reports
