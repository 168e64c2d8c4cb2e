"""
E5: running minima of the return probability and cut-time growth.
"""
from __future__ import annotations

import numpy as np
from pandas import DataFrame

from cutpath.analysis.analyzers import MinimaAnalyzer, recovery_frequencies
from cutpath.common.exceptions import ValidationError
from cutpath.generators.layered import layered_line_network
from cutpath.helpers import mean_table, proportion_half_width
from cutpath.monitors import check_bound, check_increasing
from cutpath.walks.simulation import simulate_line_walk
from cutpath.walks.statistics import cut_times

from .base import LOGGER, Experiment, Rows

BINS = 10


class MinimaGrowth(Experiment):
    """Minima of `f(X_t) = eta(X_t) / eta(X_0)` on a transient line network,
    evaluated at several horizons of the same walk."""

    ID = "E5"
    DESCRIPTION = "martingale minima and cut-time growth on the line network"

    def prepare(self) -> None:
        graph, walk = self.config.graph, self.config.walk
        self.line = layered_line_network(graph.alpha, graph.d, graph.j_max)
        self.horizons = sorted(walk.horizons) or [walk.budget]
        if self.horizons[-1] < 2:
            raise ValidationError("horizons must reach at least 2 steps")
        LOGGER.debug(f"E5: {self.line}, horizons {self.horizons}")

    def replica(self, replica: int) -> Rows:
        path = simulate_line_walk(self.line, 0, self.rng(replica), self.horizons[-1])
        analyzer = MinimaAnalyzer(self.line)

        rows, recovery = [], []
        for horizon in self.horizons:
            segment = path[:horizon + 1]
            analyzer.analyze(segment)
            record = analyzer.record

            cuts = cut_times(segment, self.config.walk.lookahead) if len(segment) > 1 else None
            exact = set(cut_times(segment, 0).times.tolist()) if len(segment) > 1 else set()
            unsound = sum(t not in exact for t in record.cut_times.tolist())

            rows.append({
                "replica": replica,
                "horizon": horizon,
                "steps": len(segment) - 1,
                "n_minima": len(record.times) - 1,
                "n_certified": int(record.certified.sum()),
                "lower_bound_sum": record.lower_bound_sum,
                "n_cut_times": cuts.n_cut_times if cuts is not None else 0,
                "unsound": unsound,
            })

        frequencies = recovery_frequencies([record], bins=BINS)
        for row in frequencies.itertuples():
            recovery.append({
                "replica": replica,
                "ratio_low": row.ratio_low,
                "ratio_high": row.ratio_high,
                "count": row.count,
                "recovered": row.recovered,
            })

        return {"replicas": rows, "recovery": recovery}

    def aggregate(self, tables: dict[str, DataFrame]) -> dict[str, DataFrame]:
        horizons = mean_table(tables["replicas"], "horizon",
                              ["steps", "n_minima", "n_certified", "lower_bound_sum", "n_cut_times"])

        pooled = tables["recovery"].groupby(["ratio_low", "ratio_high"], sort=True)[["count", "recovered"]].sum()
        pooled = pooled.reset_index()
        pooled["frequency"] = np.where(pooled["count"] > 0, pooled["recovered"] / pooled["count"].clip(lower=1),
                                       np.nan)
        pooled["half_width"] = [
            proportion_half_width(p, n) if n else np.nan for p, n in zip(pooled["frequency"], pooled["count"])
        ]
        return {"horizons": horizons, "recovery": pooled}

    def check(self, tables, aggregates):
        replicas = tables["replicas"]
        reports = []

        wide = replicas.pivot(index="replica", columns="horizon", values="lower_bound_sum")
        reports.extend(
            check_increasing("minima_sum_growth", self.horizons, [wide[h].to_numpy() for h in self.horizons],
                             key="horizon"))

        for row in aggregates["recovery"].itertuples():
            if row.count:
                reports.append(
                    check_bound(
                        "recovery_frequency",
                        float(row.frequency),
                        float(row.ratio_high),
                        half_width=float(row.half_width),
                        ratio_high=float(row.ratio_high),
                    ))

        reports.append(check_bound("certified_cut_times_unsound", float(replicas["unsound"].sum()), 0.0))
        return reports
