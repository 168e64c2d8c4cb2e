"""
E1: cutpoint census on the layered graph.
"""
from __future__ import annotations

import numpy as np
from pandas import DataFrame

from cutpath.generators.layered import build_layered_graph
from cutpath.helpers import mean_table
from cutpath.monitors import check_nonincreasing
from cutpath.schemas.generators import LayeredGraphSpec, StopCondition
from cutpath.walks.simulation import simulate_walk
from cutpath.walks.statistics import cut_times, cutpoints, linking_census

from .base import LOGGER, Experiment, Rows, census_layers, complete_blocks


class CutpointCensus(Experiment):
    """Cutpoints of walks from layer 0 to layer `j_max`, per dyadic block of
    layers, next to the unlinked counts `A_k` of the same walks."""

    ID = "E1"
    DESCRIPTION = "cutpoint census on the layered graph"

    def prepare(self) -> None:
        graph, walk = self.config.graph, self.config.walk
        self.graph = build_layered_graph(
            LayeredGraphSpec(alpha=graph.alpha, d=graph.d, j_max=graph.j_max, seed=self.seed))
        self.js = census_layers(walk.beta, graph.j_max)
        self.blocks = complete_blocks(graph.j_max)
        LOGGER.debug(f"E1: {self.graph.network}, {len(self.js)} census layers, blocks {self.blocks}")

    def replica(self, replica: int) -> Rows:
        walk = self.config.walk
        net = self.graph.network
        stop = StopCondition(budget=walk.budget, layer=self.graph.j_max)
        trace = simulate_walk(net, 0, stop, self.rng(replica))

        cuts = cut_times(trace, walk.lookahead)
        points = cutpoints(trace) if trace.start != trace.end else np.zeros(0, dtype=np.int64)
        point_layers = net.layers[points]

        census = linking_census([trace.layers], walk.beta, walk.M, self.js) if self.js else None
        unlinked = {}
        if census is not None:
            unlinked = dict(zip(census.blocks.tolist(), census.block_counts[0].tolist()))

        blocks = []
        for k in self.blocks:
            inside = (point_layers > 2**k) & (point_layers <= 2**(k + 1))
            blocks.append({
                "replica": replica,
                "k": k,
                "cutpoints": int(inside.sum()),
                "A_k": unlinked.get(k, np.nan),
            })

        return {
            "replicas": [{
                "replica": replica,
                "steps": trace.steps,
                "stop_reason": trace.stop_reason.value,
                "n_cut_times": cuts.n_cut_times,
                "censored": cuts.censored,
                "n_cutpoints": len(points),
            }],
            "blocks": blocks,
        }

    def aggregate(self, tables: dict[str, DataFrame]) -> dict[str, DataFrame]:
        blocks = tables["blocks"].copy()
        blocks["A_positive"] = (blocks["A_k"] > 0).astype(float).where(blocks["A_k"].notna())
        walks = tables["replicas"].assign(group="all")
        return {
            "blocks": mean_table(blocks, "k", ["cutpoints", "A_k", "A_positive"]),
            "walks": mean_table(walks, "group", ["steps", "n_cut_times", "n_cutpoints"]),
        }

    def check(self, tables, aggregates):
        blocks = aggregates["blocks"]
        trend = blocks[blocks["k"] >= self.config.walk.trend_from]
        reports = check_nonincreasing(
            "cutpoints_per_block",
            trend["k"].to_numpy(),
            trend["cutpoints_mean"].to_numpy(),
            trend["cutpoints_half_width"].to_numpy(),
        )
        linked = blocks[blocks["A_positive_mean"].notna()]
        reports += check_nonincreasing(
            "P_A_positive",
            linked["k"].to_numpy(),
            linked["A_positive_mean"].to_numpy(),
            linked["A_positive_half_width"].to_numpy(),
        )
        if not reports:
            LOGGER.warning(f"E1: no block pair from k={self.config.walk.trend_from} on; raise j_max")
        return reports
