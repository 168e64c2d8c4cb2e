"""
One-dimensional reductions: the weighted chain `(N, w)` and the layered
graph it is read from.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from cutpath.common.exceptions import ValidationError

from .network import Network


class LineNetwork:
    """The weighted chain on `{0, ..., L}`.

    `rungs[j] = w(j, j+1)` for `j < L` and `loops[j] = w(j, j)` for
    `j <= L`. The chain is truncated at `L`: `eta[L] = 0` and the right
    endpoint is absorbing.

    Attributes
    ==========
    `length` : `int`
        The truncation `L`.
    `rungs` : `np.ndarray`
        Positive weights `w(j, j+1)`, length `L`.
    `loops` : `np.ndarray`
        Nonnegative stay weights `w(j, j)`, length `L + 1`.
    """

    def __init__(self, rungs: Sequence[float], loops: Optional[Sequence[float]] = None) -> None:
        self.rungs = np.array(rungs, dtype=np.float64)
        self.rungs.setflags(write=False)
        self.length = len(self.rungs)
        loops = np.zeros(self.length + 1) if loops is None else np.array(loops, dtype=np.float64)
        self.loops = loops
        self.loops.setflags(write=False)
        self.validate()

    def validate(self) -> None:
        if self.length < 1:
            raise ValidationError("a line network needs at least one rung")
        if np.any(self.rungs <= 0) or not np.all(np.isfinite(self.rungs)):
            raise ValidationError("rung weights w(j, j+1) must be positive and finite")
        if len(self.loops) != self.length + 1:
            raise ValidationError(f"expected {self.length + 1} loop weights, got {len(self.loops)}")
        if np.any(self.loops < 0) or not np.all(np.isfinite(self.loops)):
            raise ValidationError("loop weights w(j, j) must be nonnegative and finite")

    @classmethod
    def unit_chain(cls, length: int) -> LineNetwork:
        """All rungs of weight 1, no loops."""
        return cls(np.ones(length))

    @classmethod
    def geometric(cls, length: int, ratio: float) -> LineNetwork:
        """Rungs `w(i, i+1) = ratio**i`, no loops."""
        return cls(float(ratio)**np.arange(length))

    @cached_property
    def resistances(self) -> np.ndarray:
        """`r_i = 1 / w(i, i+1)`."""
        return 1.0 / self.rungs

    @cached_property
    def eta(self) -> np.ndarray:
        """`eta_j = sum_{i=j}^{L-1} r_i`, with `eta_L = 0`."""
        tail_sums = np.cumsum(self.resistances[::-1])[::-1]
        return np.append(tail_sums, 0.0)

    def weights_at(self, j: int) -> tuple[float, float, float]:
        """Return `(w(j, j-1), w(j, j), w(j, j+1))`, zero outside the chain."""
        down = self.rungs[j - 1] if j > 0 else 0.0
        up = self.rungs[j] if j < self.length else 0.0
        return float(down), float(self.loops[j]), float(up)

    def transition_probabilities(self) -> np.ndarray:
        """Rows `(down, stay, up)` of the network walk for every state."""
        down = np.append(0.0, self.rungs)
        up = np.append(self.rungs, 0.0)
        total = down + self.loops + up
        return np.column_stack([down, self.loops, up]) / total[:, None]

    def as_network(self) -> Network:
        """The chain as a `Network`, loops included, layer label = state."""
        states = np.arange(self.length + 1)
        has_loop = self.loops > 0
        tails = np.concatenate([states[:-1], states[has_loop]])
        heads = np.concatenate([states[1:], states[has_loop]])
        weights = np.concatenate([self.rungs, self.loops[has_loop]])
        return Network(self.length + 1, tails, heads, weights, labels={"layer": states})

    def truncate(self, length: int) -> LineNetwork:
        """The chain cut down to `{0, ..., length}`."""
        if not 1 <= length <= self.length:
            raise ValidationError(f"truncation {length} outside [1, {self.length}]")
        return LineNetwork(self.rungs[:length], self.loops[:length + 1])

    def __str__(self) -> str:
        return f"LineNetwork(L={self.length}, eta_0={self.eta[0]:.6g})"

    __repr__ = __str__


@dataclass(frozen=True)
class LayeredGraph:
    """Layers of regular expanders joined between adjacent layers.

    Attributes
    ==========
    `network` : `Network`
        The graph, with a `"layer"` label on every vertex.
    `sizes` : `np.ndarray`
        Vertex count `2**k(j)` of every layer `j = 0..j_max`.
    `offsets` : `np.ndarray`
        First vertex id of every layer; `offsets[-1]` is the vertex count.
    `boundaries` : `tuple[int, ...]`
        Layers `j` such that layer `j + 1` is twice the size of layer `j`.
    `j0` : `int`
        First layer that follows the size schedule; earlier layers copy it.
    `gaps` : `dict[int, float]`
        `second_eigenvalue` of the expander used for each size `2**k`.
    """

    network: Network
    sizes: np.ndarray
    offsets: np.ndarray
    boundaries: tuple[int, ...]
    alpha: float
    d: int
    j0: int
    seed: int
    gaps: dict

    @property
    def j_max(self) -> int:
        return len(self.sizes) - 1

    def layer_vertices(self, j: int) -> np.ndarray:
        """Vertex ids of layer `j`."""
        return np.arange(self.offsets[j], self.offsets[j + 1])
