"""
Closed forms on a line network truncated at `L`.

All quantities are exact for the chain absorbed at `L`, where `eta_L = 0`.
"""
from __future__ import annotations

from cutpath.common.exceptions import ValidationError
from cutpath.data.line import LineNetwork
from cutpath.walks.simulation import pass_window


def _check_state(line: LineNetwork, j: int, name: str = "j") -> None:
    if not 0 <= j <= line.length:
        raise ValidationError(f"{name}={j} outside [0, {line.length}]")


def return_prob(line: LineNetwork, j: int) -> float:
    """Probability of hitting 0 before `L` from `j`, `eta_j / eta_0`."""
    _check_state(line, j)
    return float(line.eta[j] / line.eta[0])


def escape_prob_between(line: LineNetwork, j_minus: int, j_plus: int) -> float:
    """`1 - eta_{j+} / eta_{j-}`: from `j_plus`, the chance of never revisiting `j_minus`.

    Equal to `sum_{i=j_-}^{j_+ - 1} r_i / eta_{j_-}`.
    """
    _check_state(line, j_minus, "j_minus")
    _check_state(line, j_plus, "j_plus")
    if j_plus < j_minus:
        raise ValidationError(f"j_plus={j_plus} below j_minus={j_minus}")
    if j_minus == line.length:
        return 0.0
    return float(line.resistances[j_minus:j_plus].sum() / line.eta[j_minus])


def escape_prob(line: LineNetwork, j: int, beta: float) -> float:
    """`escape_prob_between` on the window `floor(j - j**beta)`, `ceil(j + j**beta)`."""
    j_minus, j_plus = pass_window(j, beta)
    if j_minus < 0 or j_plus > line.length:
        raise ValidationError(f"window [{j_minus}, {j_plus}] of j={j} outside [0, {line.length}]")
    return escape_prob_between(line, j_minus, j_plus)


def unlinked_prob(line: LineNetwork, j: int, beta: float, M: int) -> float:
    """Exact `p_j`, the chance that `j` is not linked for the walk from 0.

    From `j_+` the walk returns to `j_-` with probability
    `q = eta_{j+} / eta_{j-}`, so the linking is `1 + Geometric(q)` and
    `p_j = 1 - q**(M-1)`. Windows reaching past `L` are never linked.
    """
    if M < 1:
        raise ValidationError(f"M must be positive (got {M})")
    j_minus, j_plus = pass_window(j, beta)
    if j_minus < 0:
        raise ValidationError(f"window of j={j} starts below 0")
    if j_plus > line.length:
        return 1.0
    q = line.eta[j_plus] / line.eta[j_minus]
    return float(1.0 - q**(M - 1))
