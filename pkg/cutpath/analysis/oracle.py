"""
Exact laws of the simple random walk on `{0..a}` conditioned on reaching
`a` before returning to 0, from absorbing-chain matrices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd
from pandas import DataFrame

from cutpath.analysis.bounds import chernoff_bound, visits_bound
from cutpath.common.exceptions import ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.walks.conditioned import conditioned_step_probabilities

LOGGER = CUTPATH_LOGGER.getChild("oracle")

MAX_TARGET = 64


@dataclass(frozen=True)
class SrwOracle:
    """Exact conditioned laws for one target `a`.

    Attributes
    ==========
    `hit_before` : `np.ndarray`
        `P(tau_a < t | tau_a < tau_0)` for `t = 0..t_max`.
    `visits_tail` : `np.ndarray`
        `P(|B| > m | tau_a < tau_0)` for `m = 0..m_max`, `B` being the
        times spent at `a/2` before `tau_a`.
    `escape` : `float`
        `P(tau_a < tau_0)` after the forced first step, `1/a`.
    `return_ratio` : `float`
        Chance that the conditioned walk revisits `a/2` before `tau_a`.
    """

    a: int
    laziness: float
    hit_before: np.ndarray
    visits_tail: np.ndarray
    escape: float
    return_ratio: float


def _check_target(a: int, laziness: float) -> None:
    if not 2 <= a <= MAX_TARGET:
        raise ValidationError(f"the oracle supports 2 <= a <= {MAX_TARGET} (got {a})")
    if not 0 <= laziness < 1:
        raise ValidationError(f"laziness must lie in [0, 1) (got {laziness})")


def _absorbing_chain(a: int, laziness: float) -> np.ndarray:
    """Lazy simple walk on `{0..a}` absorbed at both ends."""
    P = np.zeros((a + 1, a + 1))
    P[0, 0] = P[a, a] = 1.0
    interior = np.arange(1, a)
    P[interior, interior - 1] = (1 - laziness) / 2
    P[interior, interior] = laziness
    P[interior, interior + 1] = (1 - laziness) / 2
    return P


def _conditioned_chain(a: int, laziness: float) -> np.ndarray:
    rows = conditioned_step_probabilities(a, laziness)
    P = np.zeros((a + 1, a + 1))
    states = np.arange(a + 1)
    P[states[1:], states[1:] - 1] = rows[1:, 0]
    P[states, states] = rows[:, 1]
    P[states[:-1], states[:-1] + 1] = rows[:-1, 2]
    return P


def absorption_probability(a: int, laziness: float = 0.0) -> float:
    """`P(tau_a < tau_0)` from 1, solved on the absorbing chain."""
    _check_target(a, laziness)
    P = _absorbing_chain(a, laziness)
    Q = P[1:a, 1:a]
    R = P[1:a, a]
    x = np.linalg.solve(np.eye(a - 1) - Q, R)
    return float(x[0])


def _revisit_probability(P: np.ndarray, b: int, a: int) -> float:
    """Chance that the chain `P` started at `b` returns to `b` before `a`."""
    others = np.array([s for s in range(a) if s != b])
    Q = P[np.ix_(others, others)]
    x = np.linalg.solve(np.eye(len(others)) - Q, P[others, b])
    return float(P[b, b] + P[b, others] @ x)


def exact_srw_oracle(a: int, t_max: int, m_max: int, laziness: float = 0.0) -> SrwOracle:
    """Exact hitting-time and visit-count laws of the conditioned walk.

    The hitting law uses powers of the chain absorbed at 0 and `a`,
    started at 1 after the forced first step and divided by
    `P(tau_a < tau_0) = 1/a`. The visit law at `b = a/2` is geometric
    with the revisit probability of the conditioned chain.

    Parameters
    ----------
    `a` : `int`
        Even target, `2 <= a <= 64`.
    `t_max` : `int`
        Last time of the hitting law.
    `m_max` : `int`
        Last count of the visit law.
    `laziness` : `float`
        Stay probability of interior steps after the first.

    Raises
    ------
    `ValidationError`
        If `a` is odd or out of range.
    """
    _check_target(a, laziness)
    if a % 2:
        raise ValidationError(f"the visit law needs an even a (got {a})")

    P = _absorbing_chain(a, laziness)
    escape = absorption_probability(a, laziness)

    # hit_before[t] = P(tau_a <= t - 1); the walk sits at 1 at time 1
    hit_before = np.zeros(t_max + 1)
    mu = np.zeros(a + 1)
    mu[1] = 1.0
    for t in range(2, t_max + 1):
        hit_before[t] = mu[a] / escape
        mu = mu @ P
    hit_before = np.minimum(hit_before, 1.0)

    rho = _revisit_probability(_conditioned_chain(a, laziness), a // 2, a)
    visits_tail = rho**np.arange(m_max + 1, dtype=float)

    LOGGER.debug(f"oracle a={a}: escape={escape:.6g}, revisit={rho:.6g}")
    return SrwOracle(
        a=a,
        laziness=laziness,
        hit_before=hit_before,
        visits_tail=visits_tail,
        escape=escape,
        return_ratio=rho,
    )


def conditioned_visit_expectation(a: int, b: int | None = None, laziness: float = 0.0) -> float:
    """Expected time the conditioned walk spends at `b` before `tau_a`.

    `b` defaults to `a // 2`. Read off the fundamental matrix of the
    conditioned chain.
    """
    _check_target(a, laziness)
    b = a // 2 if b is None else b
    if not 0 <= b < a:
        raise ValidationError(f"b={b} outside [0, {a})")
    Q = _conditioned_chain(a, laziness)[:a, :a]
    green = np.linalg.inv(np.eye(a) - Q)
    return float(green[0, b])


def fit_visits_constant(a: int, laziness: float = 0.0) -> float:
    """`C` such that `P(|B| > m) = exp(-2 C m / a)` exactly."""
    oracle = exact_srw_oracle(a, t_max=1, m_max=1, laziness=laziness)
    return -a * math.log(oracle.return_ratio) / 2.0


def bound_sweep(
    a_values: Sequence[int],
    t_values: Sequence[int],
    m_values: Sequence[int],
    laziness: float = 0.0,
) -> DataFrame:
    """Exact conditioned laws next to their bounds over a parameter grid.

    One row per `(quantity, a, t_or_m)` with `quantity` either
    `"chernoff"` (hitting before `t`) or `"visits"` (more than `m` visits).
    """
    t_values = np.asarray(sorted(set(int(t) for t in t_values)), dtype=np.int64)
    m_values = np.asarray(sorted(set(int(m) for m in m_values)), dtype=np.int64)
    if (len(t_values) and t_values[0] < 0) or (len(m_values) and m_values[0] < 0):
        raise ValidationError("t and m must be nonnegative")

    frames = []
    for a in a_values:
        oracle = exact_srw_oracle(
            int(a),
            t_max=int(t_values[-1]) if len(t_values) else 0,
            m_max=int(m_values[-1]) if len(m_values) else 0,
            laziness=laziness,
        )
        for quantity, grid, exact, bound in (
            ("chernoff", t_values, oracle.hit_before, chernoff_bound(int(a), t_values.astype(float))),
            ("visits", m_values, oracle.visits_tail, visits_bound(int(a), m_values.astype(float))),
        ):
            if not len(grid):
                continue
            exact = exact[grid]
            bound = np.atleast_1d(bound)
            frames.append(DataFrame({
                "quantity": quantity,
                "a": int(a),
                "t_or_m": grid,
                "exact": exact,
                "bound": bound,
                "satisfied": exact <= bound,
            }))

    if not frames:
        return DataFrame(columns=["quantity", "a", "t_or_m", "exact", "bound", "satisfied"])
    return pd.concat(frames, ignore_index=True)
