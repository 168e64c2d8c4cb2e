"""
E2: linking census on the line network of the layered graph.
"""
from __future__ import annotations

import numpy as np
from pandas import DataFrame

from cutpath.analysis.line import unlinked_prob
from cutpath.generators.layered import layered_line_network
from cutpath.helpers import mean_table
from cutpath.monitors import check_bound, check_nonincreasing
from cutpath.walks.simulation import simulate_line_walk
from cutpath.walks.statistics import linking_census

from .base import LOGGER, Experiment, Rows, census_layers, complete_blocks


class LinkingCensus(Experiment):
    """Unlinked layers `I_j` and their dyadic block counts `A_k` for walks
    on the line network, against the exact `p_j` of the truncated chain."""

    ID = "E2"
    DESCRIPTION = "linking census on the line network"

    def prepare(self) -> None:
        graph, walk = self.config.graph, self.config.walk
        self.line = layered_line_network(graph.alpha, graph.d, graph.j_max)
        self.js = census_layers(walk.beta, graph.j_max)
        self.blocks = complete_blocks(graph.j_max, self.js)
        self.exact = {j: unlinked_prob(self.line, j, walk.beta, walk.M) for j in self.js}
        LOGGER.debug(f"E2: {self.line}, {len(self.js)} census layers, blocks {self.blocks}")

    def replica(self, replica: int) -> Rows:
        walk = self.config.walk
        path = simulate_line_walk(self.line, 0, self.rng(replica), walk.budget)
        if path[-1] != self.line.length:
            LOGGER.debug(f"E2 replica {replica}: budget spent at state {path[-1]}")

        census = linking_census([path], walk.beta, walk.M, self.js)
        counts = dict(zip(census.blocks.tolist(), census.block_counts[0].tolist()))

        return {
            "replicas": [{
                "replica": replica,
                "steps": len(path) - 1,
                "absorbed": bool(path[-1] == self.line.length),
            }],
            "layers": [{
                "replica": replica,
                "j": j,
                "unlinked": int(flag),
            } for j, flag in zip(census.js.tolist(), census.indicators[0].tolist())],
            "blocks": [{
                "replica": replica,
                "k": k,
                "A_k": counts[k],
                "A_mean_p": counts[k] / 2**k,
            } for k in self.blocks],
        }

    def aggregate(self, tables: dict[str, DataFrame]) -> dict[str, DataFrame]:
        layers = mean_table(tables["layers"], "j", ["unlinked"])
        layers["p_exact"] = layers["j"].map(self.exact)

        blocks = tables["blocks"].assign(A_positive=lambda frame: (frame["A_k"] > 0).astype(float))
        blocks = mean_table(blocks, "k", ["A_k", "A_mean_p", "A_positive"])
        blocks["p_exact_mean"] = [
            np.mean([self.exact[j] for j in range(2**k + 1, 2**(k + 1) + 1)]) for k in blocks["k"]
        ]
        return {"layers": layers, "blocks": blocks}

    def check(self, tables, aggregates):
        blocks = aggregates["blocks"]
        reports = [
            check_bound(
                "block_unlinked_fraction",
                float(row.A_mean_p_mean),
                float(row.p_exact_mean),
                half_width=float(row.A_mean_p_half_width),
                k=int(row.k),
            ) for row in blocks.itertuples()
        ]
        reports += check_nonincreasing(
            "P_A_positive",
            blocks["k"].to_numpy(),
            blocks["A_positive_mean"].to_numpy(),
            blocks["A_positive_half_width"].to_numpy(),
        )
        return reports
