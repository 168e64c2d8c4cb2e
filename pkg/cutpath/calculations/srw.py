"""
E6: exact conditioned walk laws against their bounds.
"""
from __future__ import annotations

import pandas as pd
from pandas import DataFrame

from cutpath.analysis.oracle import bound_sweep, fit_visits_constant
from cutpath.common.log import LOG_LEVEL_REPORT
from cutpath.monitors import check_bound

from .base import LOGGER, Experiment, Rows


class OracleSweep(Experiment):
    """A deterministic sweep; the replica count is ignored."""

    ID = "E6"
    DESCRIPTION = "exact conditioned walk laws against the hitting-time and visit bounds"
    REPLICATED = False

    def replica(self, replica: int) -> Rows:
        bounds, laziness = self.config.bounds, self.config.walk.laziness
        frames = [
            bound_sweep([a], range(bounds.t_max + 1), range(bounds.m_factor * a + 1), laziness=laziness)
            for a in bounds.a
        ]
        return {"sweep": pd.concat(frames, ignore_index=True).to_dict("records")}

    def aggregate(self, tables: dict[str, DataFrame]) -> dict[str, DataFrame]:
        sweep = tables["sweep"]
        grouped = sweep.assign(excess=sweep["exact"] - sweep["bound"]).groupby(["quantity", "a"], sort=True)
        summary = grouped.agg(
            points=("exact", "size"),
            violations=("satisfied", lambda flags: int((~flags.astype(bool)).sum())),
            max_excess=("excess", "max"),
        ).reset_index()

        laziness = self.config.walk.laziness
        summary["fitted_C"] = [
            fit_visits_constant(int(a), laziness) if quantity == "visits" else float("nan")
            for quantity, a in zip(summary["quantity"], summary["a"])
        ]
        return {"summary": summary}

    def check(self, tables, aggregates):
        laziness = self.config.walk.laziness
        reports = []
        for row in aggregates["summary"].itertuples():
            if row.quantity == "visits" and laziness > 0:
                LOGGER.log(LOG_LEVEL_REPORT, f"lazy visits law at a={row.a}: fitted C={row.fitted_C:.6g}")
                continue
            reports.append(check_bound(f"{row.quantity}_violations", float(row.violations), 0.0, a=int(row.a)))
        return reports
