"""
E3: resistance profiles of a transient host (layered graph or horn) and of
the walk's path.
"""
from __future__ import annotations

import numpy as np
from pandas import DataFrame

from cutpath.analysis.resistance import resistance_profile
from cutpath.common.exceptions import ValidationError
from cutpath.generators.lattice import build_horn
from cutpath.generators.layered import build_layered_graph
from cutpath.helpers import half_width, mean_table
from cutpath.monitors import check_bound, check_nonincreasing
from cutpath.schemas.generators import HornSpec, LayeredGraphSpec, StopCondition
from cutpath.walks.simulation import simulate_walk
from cutpath.walks.statistics import path_subgraph

from .base import LOGGER, Experiment, Rows

PATH_GROWTH = 0.5


class ResistanceProfiles(Experiment):
    """`R_eff(root <-> layer n)` on the host, which converges, and on the
    traversed subgraph PATH, which keeps growing.

    The host is the layered graph (layer `j`) or, with `family = "horn"`,
    the horn of `f` (layer `x_1`), rooted at the origin.
    """

    ID = "E3"
    DESCRIPTION = "resistance profiles of the host and of PATH"

    def prepare(self) -> None:
        graph = self.config.graph
        if graph.family not in ("layered", "horn"):
            raise ValidationError(f"E3 needs a layered or horn graph, not '{graph.family}'")

        deepest = graph.x1_max if graph.family == "horn" else graph.j_max
        self.depths = sorted(graph.depths) or [2**k for k in range(1, deepest.bit_length()) if 2**k <= deepest]
        if not self.depths or self.depths[-1] > deepest:
            raise ValidationError(f"depths {self.depths} must lie in [1, {deepest}]")

        if graph.family == "horn":
            self.network = build_horn(
                HornSpec(dimension=graph.dimension, alpha=graph.alpha, x1_max=graph.x1_max, f_floor=graph.f_floor))
            self.root = self.network.terminals["origin"]
        else:
            self.network = build_layered_graph(
                LayeredGraphSpec(alpha=graph.alpha, d=graph.d, j_max=graph.j_max, seed=self.seed)).network
            self.root = 0

        self.host = resistance_profile(self.network, self.root, depths=self.depths)
        LOGGER.debug(f"E3: {graph.family} host {self.network}, profile {np.round(self.host, 6).tolist()}")

    def replica(self, replica: int) -> Rows:
        stop = StopCondition(budget=self.config.walk.budget, layer=self.depths[-1])
        trace = simulate_walk(self.network, self.root, stop, self.rng(replica))
        path, _ = path_subgraph(trace)

        reached = [depth for depth in self.depths if depth <= trace.layers.max()]
        profile = resistance_profile(path, self.root, depths=reached) if reached else []
        values = dict(zip(reached, profile))

        return {
            "replicas": [{
                "replica": replica,
                "steps": trace.steps,
                "stop_reason": trace.stop_reason.value,
                "deepest": int(trace.layers.max()),
            }],
            "profiles": [{
                "replica": replica,
                "depth": depth,
                "R_path": values.get(depth, np.nan),
            } for depth in self.depths],
        }

    def aggregate(self, tables: dict[str, DataFrame]) -> dict[str, DataFrame]:
        profiles = mean_table(tables["profiles"], "depth", ["R_path"])
        profiles["R_host"] = self.host
        return {"profiles": profiles}

    def check(self, tables, aggregates):
        reports = []
        increments = np.diff(self.host)
        if self.config.graph.family == "horn":
            # per doubling of x_1 the horn adds less resistance than the doubling before
            doublings = [n for n in range(1, len(self.depths)) if self.depths[n] == 2 * self.depths[n - 1]]
            reports.extend(
                check_nonincreasing(
                    "horn_increment_decay",
                    [self.depths[n] for n in doublings],
                    [increments[n - 1] for n in doublings],
                    [0.0] * len(doublings),
                    key="depth",
                ))
        elif len(increments) >= 2:
            reports.append(
                check_bound(
                    "host_increment_decay",
                    float(increments[-1]),
                    float(increments[0]) / 10,
                    depth=int(self.depths[-1]),
                ))

        wide = tables["profiles"].pivot(index="replica", columns="depth", values="R_path")
        for low, high in zip(self.depths, self.depths[1:]):
            if high != 2 * low:
                continue
            growth = (wide[high] - wide[low]).dropna().to_numpy()
            if not len(growth):
                continue
            # a floor check: PATH_GROWTH <= mean growth (+ half-width)
            reports.append(
                check_bound(
                    "path_growth_per_doubling",
                    PATH_GROWTH,
                    float(growth.mean()),
                    half_width=half_width(growth),
                    depth=int(high),
                ))
        return reports
