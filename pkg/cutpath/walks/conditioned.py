"""
Simple random walk on `{0..a}` conditioned to reach `a` before returning to 0.
"""
from __future__ import annotations

import numpy as np

from cutpath.common.exceptions import ValidationError

from .simulation import BUFFER_SIZE, Seed, _as_rng


def conditioned_step_probabilities(a: int, laziness: float = 0.0) -> np.ndarray:
    """Rows `(down, stay, up)` of the h-transformed chain with `h(x) = x`.

    Off the lazy part, `x -> x+1` has probability `(x+1)/(2x)` and
    `x -> x-1` has `(x-1)/(2x)`. Row 0 is the forced first step and row
    `a` is absorbing.
    """
    if a < 2:
        raise ValidationError(f"a must be at least 2 (got {a})")
    if not 0 <= laziness < 1:
        raise ValidationError(f"laziness must lie in [0, 1) (got {laziness})")

    x = np.arange(1, a, dtype=float)
    rows = np.zeros((a + 1, 3))
    rows[0] = (0.0, 0.0, 1.0)
    rows[1:a, 0] = (1 - laziness) * (x - 1) / (2 * x)
    rows[1:a, 1] = laziness
    rows[1:a, 2] = (1 - laziness) * (x + 1) / (2 * x)
    rows[a] = (0.0, 1.0, 0.0)
    return rows


def sample_conditioned_excursion(a: int, seed: Seed, laziness: float = 0.0) -> np.ndarray:
    """One path `0, 1, ..., a` of the walk conditioned on `tau_a < tau_0`.

    Parameters
    ----------
    `a` : `int`
        The target, at least 2.
    `seed` : `int | np.random.Generator`
        The random stream.
    `laziness` : `float`
        Probability of staying put at every step after the first.

    Returns
    -------
    `np.ndarray`
        The states from time 0 up to the hitting time of `a`.
    """
    rows = conditioned_step_probabilities(a, laziness)
    rng = _as_rng(seed)
    down, stay = rows[:, 0], rows[:, 0] + rows[:, 1]

    path = [0, 1]
    state = 1
    buffer = rng.random(BUFFER_SIZE)
    position = 0
    while state != a:
        if position == BUFFER_SIZE:
            buffer = rng.random(BUFFER_SIZE)
            position = 0
        u = buffer[position]
        position += 1
        state += -1 if u < down[state] else (0 if u < stay[state] else 1)
        path.append(state)

    return np.array(path, dtype=np.int64)
