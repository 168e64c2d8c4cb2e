"""Closed-form tail bounds for the walk and the conductance bounds for PATH."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from cutpath.common.exceptions import ValidationError
from cutpath.common.log import CUTPATH_LOGGER

LOGGER = CUTPATH_LOGGER.getChild("bounds")


class ConductanceBound(NamedTuple):
    """`12 ln d / ln(1/s)` and `q = ln(1/s) / ln d`; vacuous when `q < 12`."""

    bound: float
    q: float
    vacuous: bool


def chernoff_bound(a: int, t: np.ndarray | float) -> np.ndarray | float:
    """`2 a t exp(-a**2 / (4 t))`, 0 at `t = 0`."""
    t = np.asarray(t, dtype=float)
    safe = np.where(t > 0, t, 1.0)
    value = np.where(t > 0, 2.0 * a * safe * np.exp(-a * a / (4.0 * safe)), 0.0)
    return float(value) if value.ndim == 0 else value


def visits_bound(a: int, m: np.ndarray | float) -> np.ndarray | float:
    """`2 exp(-2 m / a)` for even `a`."""
    if a < 2 or a % 2:
        raise ValidationError(f"the visits bound needs an even a >= 2 (got {a})")
    value = 2.0 * np.exp(-2.0 * np.asarray(m, dtype=float) / a)
    return float(value) if value.ndim == 0 else value


def srw_bounds(a: int, t: float, m: float) -> tuple[float, float]:
    """`(2 a t exp(-a**2/(4t)), 2 exp(-2m/a))`."""
    return chernoff_bound(a, t), visits_bound(a, m)


def _check_degree_and_s(d: float, s: float) -> None:
    if d < 2:
        raise ValidationError(f"d must be at least 2 (got {d})")
    if not 0 < s < 1:
        raise ValidationError(f"s must lie in (0, 1) (got {s})")


def conductance_bound(d: float, s: float) -> ConductanceBound:
    """Bound on `E C_eff(X_0 <-> Y_0; PATH)` from the degree and `s`.

    Parameters
    ----------
    `d` : `float`
        Maximal degree off the sink, at least 2.
    `s` : `float`
        Largest potential next to the sink, in `(0, 1)`.

    Raises
    ------
    `ValidationError`
        If `s` is outside `(0, 1)` or `d < 2`.
    """
    _check_degree_and_s(d, s)
    q = math.log(1.0 / s) / math.log(d)
    bound = ConductanceBound(bound=12.0 / q, q=q, vacuous=q < 12)
    if bound.vacuous:
        LOGGER.debug(f"conductance bound {bound.bound:.4g} is vacuous (q={q:.4g} < 12)")
    return bound


def refined_conductance_bound(d: float, s: float) -> float:
    """`4 / floor(q / 2)`, infinite for `q < 2`."""
    _check_degree_and_s(d, s)
    q = math.log(1.0 / s) / math.log(d)
    pairs = math.floor(q / 2)
    return 4.0 / pairs if pairs >= 1 else math.inf


def resistance_lower_bound(d: float, s: float) -> float:
    """`ln(1/s) / (12 ln d)`, the matching lower bound on `E R_eff(PATH)`."""
    return 1.0 / conductance_bound(d, s).bound
