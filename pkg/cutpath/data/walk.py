"""
Recorded walks and the trajectory statistics computed from them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from pandas import DataFrame

from cutpath.common.exceptions import ValidationError

from .network import Network


class StopReason(str, Enum):
    """Why a walk was stopped."""

    HIT_TARGET = "hit_target"
    HIT_LAYER = "hit_layer"
    BUDGET = "budget"
    ABSORBED = "absorbed"


def _layer_visit_times(layers: np.ndarray) -> tuple[dict[int, int], dict[int, int]]:
    values, first = np.unique(layers, return_index=True)
    _, last_reversed = np.unique(layers[::-1], return_index=True)
    last = len(layers) - 1 - last_reversed
    return (
        dict(zip(values.tolist(), first.tolist())),
        dict(zip(values.tolist(), last.tolist())),
    )


@dataclass(frozen=True)
class WalkTrace:
    """A recorded walk `X_0, ..., X_T` on a host network.

    Attributes
    ==========
    `network` : `Network`
        The host network.
    `crossings` : `np.ndarray`
        `N(e)`, the number of times each edge was crossed (either direction).
    `steps` : `int`
        The horizon `T`.
    `stop_reason` : `StopReason`
        Why the walk ended.
    `vertices` : `np.ndarray | None`
        The vertex sequence, unless only counts were kept.
    `layers` : `np.ndarray | None`
        The layer sequence, when the host carries a `"layer"` label.
    `first_visits`, `last_visits` : `dict[int, int]`
        `tau_j` and `sigma_j` for every visited layer.
    `first_vertex`, `last_vertex` : `int | None`
        `X_0` and `X_T`, kept for traces without a vertex sequence.
    """

    network: Network
    crossings: np.ndarray
    steps: int
    stop_reason: StopReason
    vertices: Optional[np.ndarray] = None
    layers: Optional[np.ndarray] = None
    first_visits: dict = field(default_factory=dict)
    last_visits: dict = field(default_factory=dict)
    first_vertex: Optional[int] = None
    last_vertex: Optional[int] = None

    def __post_init__(self) -> None:
        if int(self.crossings.sum()) != self.steps:
            raise ValidationError(f"crossing counts sum to {int(self.crossings.sum())}, expected {self.steps}")
        if self.layers is not None and not self.first_visits:
            first, last = _layer_visit_times(self.layers)
            object.__setattr__(self, "first_visits", first)
            object.__setattr__(self, "last_visits", last)

    @property
    def start(self) -> int:
        if self.vertices is None:
            return self.first_vertex
        return int(self.vertices[0])

    @property
    def end(self) -> int:
        if self.vertices is None:
            return self.last_vertex
        return int(self.vertices[-1])

    @classmethod
    def from_sequence(
        cls,
        vertices: Sequence[int],
        network: Optional[Network] = None,
        stop_reason: StopReason = StopReason.BUDGET,
    ) -> WalkTrace:
        """Record a given vertex sequence.

        Without a host `network`, the simple graph of consecutive pairs
        (unit conductances) is used as host.

        Raises
        ------
        `ValidationError`
            If the sequence is empty or two consecutive vertices are not
            adjacent in `network`.
        """
        vertices = np.asarray(vertices, dtype=np.int64)
        if not len(vertices):
            raise ValidationError("a trace needs at least one vertex")

        pairs = list(zip(vertices[:-1].tolist(), vertices[1:].tolist()))

        if network is None:
            keys = sorted({(min(u, v), max(u, v)) for u, v in pairs})
            n = int(vertices.max()) + 1
            network = Network(n, [u for u, _ in keys], [v for _, v in keys], np.ones(len(keys)))

        lookup: dict[tuple[int, int], int] = {}
        for e, (u, v, _) in enumerate(network.edges()):
            lookup.setdefault((min(u, v), max(u, v)), e)

        crossings = np.zeros(network.n_edges, dtype=np.int64)
        for u, v in pairs:
            try:
                crossings[lookup[(min(u, v), max(u, v))]] += 1
            except KeyError as err:
                raise ValidationError(f"step {u} -> {v} is not an edge of the host network") from err

        layers = network.layers[vertices] if network.layers is not None else None

        return cls(
            network=network,
            crossings=crossings,
            steps=len(pairs),
            stop_reason=stop_reason,
            vertices=vertices,
            layers=layers,
        )


@dataclass(frozen=True)
class PassRecord:
    """Alternating visits of a layer sequence to `j_minus` and `j_plus`.

    `s[i]` is the first visit to `j_minus` after `t[i-1]` and `t[i]` the
    first visit to `j_plus` after `s[i]`. `passes` holds `(start, end)`
    of every pass: `end = t[i]` and `start` is the last `j_minus` visit
    before it.
    """

    j: int
    beta: float
    M: int
    j_minus: int
    j_plus: int
    s: tuple[int, ...] = ()
    t: tuple[int, ...] = ()
    passes: tuple[tuple[int, int], ...] = ()

    @property
    def linking(self) -> int:
        """The number of finite `t_i`."""
        return len(self.t)

    @property
    def linked(self) -> bool:
        return self.linking >= self.M


@dataclass(frozen=True)
class LinkStats:
    """Census of unlinked layers over replicas.

    `indicators[r, n]` is `I_j` (layer `js[n]` not linked) in replica
    `r`; `block_counts[r, b]` is `A_k` for `k = blocks[b]`.
    """

    js: np.ndarray
    beta: float
    M: int
    indicators: np.ndarray
    blocks: np.ndarray
    block_counts: np.ndarray

    @property
    def replicas(self) -> int:
        return self.indicators.shape[0]

    @property
    def p(self) -> np.ndarray:
        """Empirical `p_j` per layer."""
        return self.indicators.mean(axis=0)

    @property
    def block_positive(self) -> np.ndarray:
        """Empirical `P(A_k > 0)` per block."""
        return (self.block_counts > 0).mean(axis=0)

    def to_frame(self) -> DataFrame:
        """One row per layer `j` with the empirical `p_j`."""
        return DataFrame({"j": self.js, "p": self.p})

    def blocks_frame(self) -> DataFrame:
        """One row per dyadic block with the mean of `A_k` and `P(A_k > 0)`."""
        return DataFrame({
            "k": self.blocks,
            "mean_A": self.block_counts.mean(axis=0) if self.replicas else np.zeros(len(self.blocks)),
            "P_A_positive": self.block_positive,
        })


@dataclass(frozen=True)
class CutRecord:
    """Certified cut-times and cutpoints of a finite trace.

    `times` are the `t < horizon - lookahead` whose past is disjoint from
    the whole recorded future. `censored` counts the times inside the
    suppressed window that pass the same test.
    """

    horizon: int
    lookahead: int
    times: np.ndarray
    cutpoints: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    censored: int = 0

    @property
    def n_cut_times(self) -> int:
        return len(self.times)

    @property
    def n_cutpoints(self) -> int:
        return len(self.cutpoints)


@dataclass(frozen=True)
class MinimaRecord:
    """Strict running minima of the return probability along a trace.

    Index `n = 0` is the start (`M_0 = f(X_0)`, `i_0 = 0`); entries
    `n >= 1` are the successive strict minima. `recoveries[n]` is `j_n`,
    `inf` when `f` never climbs back to `M_{n-1}` within the horizon,
    in which case `certified[n]` holds and `i_n - 1` is a cut-time.
    """

    f: np.ndarray
    minima: np.ndarray
    times: np.ndarray
    recoveries: np.ndarray
    certified: np.ndarray

    @property
    def ratios(self) -> np.ndarray:
        """`M_n / M_{n-1}` for `n >= 1`."""
        return self.minima[1:] / self.minima[:-1]

    @property
    def lower_bound_sum(self) -> float:
        """`sum_n (1 - M_n / M_{n-1})`."""
        return float(np.sum(1.0 - self.ratios))

    @property
    def cut_times(self) -> np.ndarray:
        """Certified cut-times `i_n - 1`."""
        return self.times[self.certified] - 1


@dataclass(frozen=True)
class LineWalkBatch:
    """Many replicas of the network walk on a `LineNetwork`.

    `final[r]` is the state where replica `r` stopped, `steps[r]` its
    number of steps and `paths[r]` its state sequence when recorded.
    """

    start: int
    absorbing: tuple[int, ...]
    final: np.ndarray
    steps: np.ndarray
    paths: Optional[tuple[np.ndarray, ...]] = None

    @property
    def replicas(self) -> int:
        return len(self.final)

    def absorbed_at(self, state: int) -> np.ndarray:
        """Boolean mask of the replicas that stopped at `state`."""
        return self.final == state
