"""
Monte Carlo statistics and per-replica random streams.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np
from pandas import DataFrame

SIGMAS = 3.0


def replica_rng(seed: int, experiment: int = 0, replica: int = 0) -> np.random.Generator:
    """
    Independent random stream of one replica.

    :param seed: master seed
    :param experiment: experiment number (``E4`` is 4), 0 outside experiments
    :param replica: replica index
    :return: a PCG64 generator seeded from ``(seed, experiment, replica)``
    """
    sequence = np.random.SeedSequence(int(seed), spawn_key=(int(experiment), int(replica)))
    return np.random.Generator(np.random.PCG64(sequence))


def sample_mean(x: Sequence[float]) -> float:
    return float(np.mean(np.asarray(x, dtype=float)))


def standard_error(x: Sequence[float]) -> float:
    """Standard error of the mean; `nan` below two samples."""
    x = np.asarray(x, dtype=float)
    if len(x) < 2:
        return float("nan")
    return float(np.std(x, ddof=1) / np.sqrt(len(x)))


def half_width(x: Sequence[float], sigmas: float = SIGMAS) -> float:
    """`sigmas` standard errors; 0 for a constant sample."""
    error = standard_error(x)
    return 0.0 if np.isnan(error) else sigmas * error


def proportion_half_width(p: float, n: int, sigmas: float = SIGMAS) -> float:
    """Binomial `sigmas * sqrt(p (1 - p) / n)`."""
    return sigmas * float(np.sqrt(max(p * (1.0 - p), 0.0) / n)) if n else float("inf")


def within(estimate: float, target: float, width: float) -> bool:
    """Whether `|estimate - target| <= width`."""
    return bool(abs(estimate - target) <= width)


def summarize(x: Sequence[float]) -> dict[str, float]:
    """Mean, 3 sigma half-width and count of a sample."""
    x = np.asarray(x, dtype=float)
    return {"mean": sample_mean(x) if len(x) else float("nan"), "half_width": half_width(x), "n": int(len(x))}


def dyadic_block(j: np.ndarray | int) -> np.ndarray | int:
    """The `k` with `2**k < j <= 2**(k+1)`, for `j >= 1`."""
    j = np.asarray(j)
    k = np.ceil(np.log2(j)).astype(np.int64) - 1
    # exact powers of two can land one off
    k = np.where(np.power(2.0, k + 1) < j, k + 1, k)
    k = np.where(np.power(2.0, k) >= j, k - 1, k)
    return int(k) if k.ndim == 0 else k


def mean_table(frame: DataFrame, by: str | Sequence[str], columns: Sequence[str]) -> DataFrame:
    """
    Group means with 3 sigma half-widths.

    :param frame: per-replica rows
    :param by: grouping column(s)
    :param columns: columns to aggregate
    :return: one row per group with ``n``, ``<column>_mean`` and ``<column>_half_width``
    """
    grouped = frame.groupby(by, sort=True)
    table = grouped.size().rename("n").reset_index()
    for column in columns:
        table[f"{column}_mean"] = grouped[column].mean().to_numpy()
        table[f"{column}_half_width"] = grouped[column].agg(lambda x: half_width(x.dropna())).to_numpy()
    return table
