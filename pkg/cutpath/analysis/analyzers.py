"""
Analyzers of walk traces: local minima on the line network and cut-times of reducible chains.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from pandas import DataFrame

from cutpath.common.exceptions import ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.data.line import LineNetwork
from cutpath.data.walk import MinimaRecord, WalkTrace
from cutpath.helpers import proportion_half_width

LOGGER = CUTPATH_LOGGER.getChild("analyzers")

BLOCK = 1024


class Analyzer:
    """Base class for all trace analyzers."""

    def analyze(self, states: Sequence[int]) -> None:
        """Analyze a recorded state sequence.

        What is extracted is defined in subclass analyzers.

        Parameters
        ----------
        `states` : `Sequence[int]`
            The states `X_0, ..., X_T`.
        """
        raise NotImplementedError


class MinimaAnalyzer(Analyzer):
    """Running minima of the return probability along a line-network walk.

    Attributes
    ==========
    `line` : `LineNetwork`
        The chain the walk runs on.
    `record` : `MinimaRecord | None`
        The result of the last `analyze` call.
    `report` : `str`
        A one-line summary of the last analysis.
    """

    def __init__(self, line: LineNetwork) -> None:
        self.line = line
        self.record: MinimaRecord | None = None
        self.report = ""

    def analyze(self, states: Sequence[int]) -> None:
        """Locate the strict minima of `f(X_t) = min(1, eta(X_t) / eta(X_0))`
        and their recovery times.

        Parameters
        ----------
        `states` : `Sequence[int]`
            The states `X_0, ..., X_T` in `{0..L}`.

        Raises
        ------
        `ValidationError`
            If a state lies outside the chain.
        """
        states = np.asarray(states, dtype=np.int64)
        if not len(states):
            raise ValidationError("an empty trace has no minima")
        if states.min() < 0 or states.max() > self.line.length:
            raise ValidationError(f"states must lie in [0, {self.line.length}]")

        f = self._return_profile(states)
        times = self._strict_minima(f)
        minima = f[times]
        recoveries = self._recoveries(f, times, minima)
        certified = np.isinf(recoveries)
        certified[0] = False

        self.record = MinimaRecord(
            f=f,
            minima=minima,
            times=times,
            recoveries=recoveries,
            certified=certified,
        )
        self.report = (f"{len(times) - 1} strict minima, "
                       f"{int(certified.sum())} certified, "
                       f"lower-bound sum {self.record.lower_bound_sum:.4g}")
        LOGGER.debug(self.report)

    ###########
    # PRIVATE #
    ###########

    def _return_profile(self, states: np.ndarray) -> np.ndarray:
        eta = self.line.eta
        return np.minimum(1.0, eta[states] / eta[states[0]])

    @staticmethod
    def _strict_minima(f: np.ndarray) -> np.ndarray:
        """Times `i_0 = 0 < i_1 < ...` where `f` drops below all earlier values."""
        previous = np.minimum.accumulate(f)[:-1]
        return np.concatenate([[0], np.flatnonzero(f[1:] < previous) + 1]).astype(np.int64)

    @staticmethod
    def _recoveries(f: np.ndarray, times: np.ndarray, minima: np.ndarray) -> np.ndarray:
        """`j_n`, the first `t > i_n` with `f(X_t) >= M_{n-1}`; `inf` if none."""
        T = len(f)
        padded = np.full(-(-T // BLOCK) * BLOCK, -np.inf)
        padded[:T] = f
        block_max = padded.reshape(-1, BLOCK).max(axis=1)

        recoveries = np.full(len(times), np.inf)
        for n in range(1, len(times)):
            start, level = int(times[n]) + 1, minima[n - 1]
            if start >= T:
                continue
            block = start // BLOCK
            head = f[start:(block + 1) * BLOCK]
            hits = np.flatnonzero(head >= level)
            if len(hits):
                recoveries[n] = start + hits[0]
                continue
            later = np.flatnonzero(block_max[block + 1:] >= level)
            if not len(later):
                continue
            first = (block + 1 + later[0]) * BLOCK
            recoveries[n] = first + np.flatnonzero(f[first:first + BLOCK] >= level)[0]
        return recoveries


def minima_analysis(trace: WalkTrace | Sequence[int], line: LineNetwork) -> MinimaRecord:
    """Run a `MinimaAnalyzer` on a trace over `line`.

    A `WalkTrace` is read through its layer sequence when it has one.
    """
    if isinstance(trace, WalkTrace):
        states = trace.layers if trace.layers is not None else trace.vertices
    else:
        states = trace
    analyzer = MinimaAnalyzer(line)
    analyzer.analyze(states)
    return analyzer.record


def recovery_frequencies(records: Sequence[MinimaRecord], bins: int = 10) -> DataFrame:
    """Empirical `P(j_n < inf)` binned by `M_n / M_{n-1}`.

    The bound for each bin is its upper edge, since
    `P(j_n < inf | M_n, M_{n-1}) <= M_n / M_{n-1}`.
    """
    ratios = np.concatenate([r.ratios for r in records]) if records else np.zeros(0)
    recovered = np.concatenate([np.isfinite(r.recoveries[1:]) for r in records]) if records else np.zeros(0, bool)

    edges = np.linspace(0.0, 1.0, bins + 1)
    slots = np.clip(np.digitize(ratios, edges[1:-1]), 0, bins - 1)
    counts = np.bincount(slots, minlength=bins)
    hits = np.bincount(slots, weights=recovered.astype(float), minlength=bins)
    with np.errstate(invalid="ignore", divide="ignore"):
        frequency = np.where(counts > 0, hits / np.maximum(counts, 1), np.nan)

    return DataFrame({
        "ratio_low": edges[:-1],
        "ratio_high": edges[1:],
        "count": counts,
        "recovered": hits.astype(np.int64),
        "frequency": frequency,
        "half_width": [proportion_half_width(p, c) if c else np.nan for p, c in zip(frequency, counts)],
    })


def reducible_chain_cut_times(states: Sequence[int], blocks: Sequence[int] | np.ndarray) -> np.ndarray:
    """Cut-times of a walk on a chain whose classes are only ever left upward.

    Every step into a new class closes the past: `t` is returned when
    `blocks[X_{t+1}] > blocks[X_t]`.

    Raises
    ------
    `ValidationError`
        If the walk moves to a lower class.
    """
    states = np.asarray(states, dtype=np.int64)
    classes = np.asarray(blocks, dtype=np.int64)[states]
    moves = np.diff(classes)
    if np.any(moves < 0):
        raise ValidationError("the walk returns to an earlier class")
    return np.flatnonzero(moves > 0).astype(np.int64)
