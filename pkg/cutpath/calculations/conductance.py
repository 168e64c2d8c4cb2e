"""
E4: conductance of the walk's path on the `Z^2` disk.
"""
from __future__ import annotations

import math

import numpy as np
from pandas import DataFrame

from cutpath.analysis.bounds import conductance_bound, refined_conductance_bound, resistance_lower_bound
from cutpath.data.walk import StopReason
from cutpath.electrical.solvers import effective_conductance
from cutpath.electrical.transforms import layer_conductances, trace_network_exact
from cutpath.generators.lattice import build_grid_disk
from cutpath.generators.layered import build_layered_graph, contract_top_layer
from cutpath.helpers import half_width
from cutpath.monitors import check_bound
from cutpath.schemas.generators import LayeredGraphSpec, StopCondition
from cutpath.walks.simulation import simulate_walk
from cutpath.walks.statistics import path_subgraph

from .base import LOGGER, Experiment, Rows

COLUMNS = ["C_counted", "C_path", "R_path", "C_counted_half"]


class DiskConductance(Experiment):
    """Walks from the disk's origin to its sink.

    Every replica measures `C_eff(X_0 <-> Y_0)` on `G^N` and on PATH.
    The exact trace network `G-bar`, its level-slice conductances and the
    bounds built from `d` and `s` are computed once. The level-slice check
    is repeated on the layered graph with its top layer contracted to a
    sink.
    """

    ID = "E4"
    DESCRIPTION = "trace-network and path conductance bounds on the Z^2 disk"

    def prepare(self) -> None:
        self.net = build_grid_disk(self.config.graph.radius)
        self.source, self.sink = self.net.terminals["origin"], self.net.terminals["sink"]

        self.trace = trace_network_exact(self.net, self.source, self.sink)
        self.solution = self.trace.solution
        self.trace_conductance = effective_conductance(self.trace.network(), [self.source], [self.sink])
        self.levels = layer_conductances(self.net, self.source, self.sink, graph="disk")

        graph = self.config.graph
        layered = build_layered_graph(
            LayeredGraphSpec(alpha=graph.alpha, d=graph.d, j_max=graph.j_max, seed=self.seed))
        contracted, root, top = contract_top_layer(layered)
        self.levels += layer_conductances(contracted, root, top, graph="layered")

        self.half_boundary = np.flatnonzero(self.net.layers >= self.config.graph.radius // 2)
        LOGGER.debug(f"E4: {self.net}, s={self.solution.s:.6g}, d={self.solution.degree}, "
                     f"C_eff(G-bar)={self.trace_conductance:.6g}")

    def replica(self, replica: int) -> Rows:
        stop = StopCondition(budget=self.config.walk.budget, targets=[self.sink])
        trace = simulate_walk(self.net, self.source, stop, self.rng(replica))
        row = {
            "replica": replica,
            "steps": trace.steps,
            "stop_reason": trace.stop_reason.value,
        }

        if trace.stop_reason != StopReason.HIT_TARGET:
            LOGGER.warning(f"E4 replica {replica}: sink not reached in {trace.steps} steps")
            return {"replicas": [{**row, **{column: np.nan for column in COLUMNS}}]}

        path, counted = path_subgraph(trace)
        row["C_counted"] = effective_conductance(counted, [self.source], [self.sink])
        row["C_path"] = effective_conductance(path, [self.source], [self.sink])
        row["R_path"] = 1.0 / row["C_path"]
        row["C_counted_half"] = (effective_conductance(counted, [self.source], self.half_boundary)
                                 if self.config.walk.half_radius else np.nan)
        return {"replicas": [row]}

    def aggregate(self, tables: dict[str, DataFrame]) -> dict[str, DataFrame]:
        replicas = tables["replicas"]
        d, s = self.solution.degree, self.solution.s
        bound = conductance_bound(d, s)

        summary = {"n": int(replicas["C_counted"].notna().sum())}
        for column in COLUMNS:
            values = replicas[column].dropna()
            summary[f"{column}_mean"] = values.mean() if len(values) else np.nan
            summary[f"{column}_half_width"] = half_width(values)
        summary.update({
            "C_trace": self.trace_conductance,
            "C_host": self.solution.conductance,
            "d": d,
            "s": s,
            "q": bound.q,
            "conductance_bound": bound.bound,
            "refined_bound": refined_conductance_bound(d, s),
            "resistance_floor": resistance_lower_bound(d, s),
        })

        levels = DataFrame([report.as_row() for report in self.levels])
        return {"summary": DataFrame([summary]), "levels": levels}

    def check(self, tables, aggregates):
        summary = aggregates["summary"].iloc[0]
        replicas = tables["replicas"].dropna(subset=["C_counted"])
        if not len(replicas):
            LOGGER.warning("E4: no replica reached the sink")
            return list(self.levels)

        counted, counted_width = float(summary["C_counted_mean"]), float(summary["C_counted_half_width"])
        reports = list(self.levels)
        reports.append(
            check_bound("path_conductance", counted, float(summary["conductance_bound"]), counted_width,
                        conservative=True))
        if math.isfinite(summary["refined_bound"]):
            reports.append(
                check_bound("refined_path_conductance", counted, float(summary["refined_bound"]), counted_width,
                            conservative=True))
        reports.append(check_bound("jensen", counted, self.trace_conductance, counted_width))

        difference = (replicas["C_path"] - replicas["C_counted"]).to_numpy()
        reports.append(check_bound("path_below_counted", float(difference.mean()), 0.0, half_width(difference)))

        # a floor check: the resistance floor stays below the mean PATH resistance
        reports.append(
            check_bound(
                "path_resistance_floor",
                float(summary["resistance_floor"]),
                float(summary["R_path_mean"]),
                float(summary["R_path_half_width"]),
            ))
        return reports
