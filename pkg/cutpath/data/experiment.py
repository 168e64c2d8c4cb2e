"""
Results of an experiment run.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from pandas import DataFrame

from cutpath.schemas.report import BoundReport


@dataclass
class ExperimentReport:
    """Tables, bound verdicts and bookkeeping of one experiment run.

    Attributes
    ==========
    `experiment` : `str`
        The experiment id, `E1` to `E6`.
    `tables` : `dict[str, DataFrame]`
        Per-replica rows, one frame per table name.
    `aggregates` : `dict[str, DataFrame]`
        Means with 3 sigma half-widths, one table per aggregated view.
    `bounds` : `list[BoundReport]`
        Every bound or trend check of the run.
    `config` : `dict`
        The resolved configuration, seed included.
    `runtime` : `float`
        Wall time in seconds.
    `files` : `list[str]`
        Paths written by the run.
    """

    experiment: str
    tables: dict
    aggregates: dict
    bounds: list
    config: dict
    runtime: float = 0.0
    files: list = field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        return all(report.satisfied for report in self.bounds)

    @property
    def violations(self) -> list[BoundReport]:
        return [report for report in self.bounds if not report.satisfied]

    def bounds_frame(self) -> DataFrame:
        """One row per bound check."""
        rows = [report.as_row() for report in self.bounds]
        return DataFrame(rows, columns=None if rows else ["quantity", "value", "half_width", "bound", "satisfied"])
