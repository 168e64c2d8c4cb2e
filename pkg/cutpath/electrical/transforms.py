"""
Network transforms built on a solved potential: level sets, subdivision at
threshold potentials, the expected-crossing (trace) network and the slice
conductances between level sets.
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from cutpath.common.exceptions import ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.data.network import Network, SplitEdge, SubdividedNetwork, TraceNetwork, VoltageSolution
from cutpath.monitors import check_bound
from cutpath.schemas.report import BoundReport

from .solvers import effective_conductance, level_indices, solve_voltage

LOGGER = CUTPATH_LOGGER.getChild("transforms")

SINK_CLASS = -1
RATIO_SLACK = 1e-9


def level_sets(sol: VoltageSolution, d: int, net: Optional[Network] = None) -> dict[int, np.ndarray]:
    """Partition the vertices by `d**(-i-1) < v(x) <= d**(-i)`.

    Vertices at potential 0 (the sink and anything it cuts off) form the
    terminal class `SINK_CLASS`.

    Parameters
    ----------
    `sol` : `VoltageSolution`
        The solved potential.
    `d` : `int`
        The level base, at least 2.
    `net` : `Optional[Network]`
        When given and `d` is at least the maximal degree off the sink,
        every edge is checked to join equal or adjacent levels.

    Returns
    -------
    `dict[int, np.ndarray]`
        Sorted vertex ids per level index.

    Raises
    ------
    `ValidationError`
        If `d < 2`.
    """
    levels = level_indices(sol.potentials, d)
    partition = {int(i): np.flatnonzero(levels == i) for i in np.unique(levels)}

    if net is not None and d >= sol.degree:
        jumps = _level_jumps(net, levels, sol.sink)
        if len(jumps):
            LOGGER.warning(f"{len(jumps)} edges skip a level set at d={d}, first: {jumps[0]}")

    return partition


def _level_jumps(net: Network, levels: np.ndarray, sink: int) -> list[tuple[int, int]]:
    off_sink = (net.tails != sink) & (net.heads != sink)
    tails, heads = net.tails[off_sink], net.heads[off_sink]
    gap = np.abs(levels[tails] - levels[heads])
    both = (levels[tails] >= 0) & (levels[heads] >= 0)
    bad = np.flatnonzero(both & (gap > 1))
    return [(int(tails[k]), int(heads[k])) for k in bad]


def neighbor_ratio_violations(net: Network, sol: VoltageSolution, d: Optional[int] = None) -> list[tuple[int, int]]:
    """Edges `(x, y)` off the sink with `v(x) > d * v(y)`.

    With `d` the maximal degree off the sink (the default), harmonicity
    forces this list to be empty.
    """
    d = sol.degree if d is None else d
    v = sol.potentials
    proper = ~net.loops & (net.tails != sol.sink) & (net.heads != sol.sink)
    tails, heads = net.tails[proper], net.heads[proper]
    high = np.maximum(v[tails], v[heads])
    low = np.minimum(v[tails], v[heads])
    bad = np.flatnonzero(high > d * low * (1 + RATIO_SLACK))
    return [(int(tails[k]), int(heads[k])) for k in bad]


def subdivide_between_levels(net: Network, sol: VoltageSolution, i: int, d: int) -> SubdividedNetwork:
    """Split every edge crossing the potentials `d**(-i-1)` and `d**(-i-2)`.

    An edge `(x, y)` with `v(x) > t > v(y)` is replaced by `(x, z)` and
    `(z, y)` with

        c_xz = (v(x) - v(y)) / (v(x) - t) * c_xy
        c_zy = (v(x) - v(y)) / (t - v(y)) * c_xy

    so that `v(z) = t` and all other potentials are unchanged. An edge
    crossing both thresholds is split twice. Old vertices already at a
    threshold join `Z` (or `Z'`) and their edges are not split; zero-current
    edges never cross.

    Parameters
    ----------
    `net` : `Network`
        The solved network.
    `sol` : `VoltageSolution`
        The potential on `net`.
    `i` : `int`
        The upper level.
    `d` : `int`
        The level base.

    Returns
    -------
    `SubdividedNetwork`
        The new network, `Z`, `Z'` and the split records.

    Raises
    ------
    `ValidationError`
        If one of the levels `i`, `i+1`, `i+2` is empty.
    """
    v = sol.potentials
    levels = level_indices(v, d)
    for level in (i, i + 1, i + 2):
        if not np.any(levels == level):
            raise ValidationError(f"level {level} is empty at d={d}")

    thresholds = (float(d)**(-i - 1), float(d)**(-i - 2))
    at_threshold = [np.isclose(v, t, rtol=1e-12, atol=0.0) for t in thresholds]
    members: list[list[int]] = [np.flatnonzero(mask).tolist() for mask in at_threshold]

    tails, heads, conductances = [], [], []
    potentials = list(v)
    splits: list[SplitEdge] = []
    next_vertex = net.n_vertices

    for e, (x, y, c) in enumerate(net.edges()):
        high, low = (x, y) if v[x] >= v[y] else (y, x)
        crossed = [(k, t) for k, t in enumerate(thresholds) if v[low] < t < v[high] and not (
            at_threshold[k][high] or at_threshold[k][low])]

        if x == y or not crossed:
            tails.append(x)
            heads.append(y)
            conductances.append(c)
            continue

        drop = v[high] - v[low]
        upper, upper_v = high, v[high]
        for k, t in crossed:
            z = next_vertex
            next_vertex += 1
            potentials.append(t)
            members[k].append(z)

            c_xz = drop / (upper_v - t) * c
            splits.append(SplitEdge(edge=e, x=upper, y=low, z=z, c_xz=c_xz, c_zy=drop / (t - v[low]) * c))

            tails.append(upper)
            heads.append(z)
            conductances.append(c_xz)
            upper, upper_v = z, t

        tails.append(upper)
        heads.append(low)
        conductances.append(drop / (upper_v - v[low]) * c)

    LOGGER.debug(f"subdivided {len(splits)} edge segments between levels {i} and {i + 2}")

    return SubdividedNetwork(
        base=net,
        network=Network(next_vertex, tails, heads, conductances, terminals=net.terminals),
        level=i,
        d=d,
        z=np.array(sorted(members[0]), dtype=np.int64),
        z_prime=np.array(sorted(members[1]), dtype=np.int64),
        thresholds=thresholds,
        splits=tuple(splits),
        potentials=np.array(potentials),
    )


def trace_network_exact(net: Network, source: int, sink: int) -> TraceNetwork:
    """Expected crossing and visit counts of the walk from `source` stopped at `sink`.

    `E N(x, y) = (v(x) + v(y)) c_xy / C_eff` for proper edges,
    `v(x) c / C_eff` for loops, and `g(x) = v(x) C_x / C_eff`.
    """
    sol = solve_voltage(net, source, sink)
    v = sol.potentials

    ends = np.where(net.loops, 0.0, v[net.heads])
    crossings = (v[net.tails] + ends) * net.conductances / sol.conductance
    visits = v * net.conductance_totals() / sol.conductance

    return TraceNetwork(base=net, solution=sol, crossings=crossings, visits=visits)


def eligible_levels(net: Network, sol: VoltageSolution, d: Optional[int] = None) -> list[int]:
    """Levels `i` such that `G_i`, `G_{i+1}` and `G_{i+2}` are nonempty and
    every neighbor of the sink lies in a level `>= i + 2`."""
    d = max(sol.degree, 2) if d is None else d
    levels = level_indices(sol.potentials, d)
    present = set(np.unique(levels[levels >= 0]).tolist())

    sink_levels = levels[net.neighbors(sol.sink)]
    sink_levels = sink_levels[sink_levels >= 0]
    lowest = int(sink_levels.min()) if len(sink_levels) else np.inf

    return [i for i in sorted(present) if i + 1 in present and i + 2 in present and lowest >= i + 2]


def slice_conductance_bound(
    net: Network,
    source: int,
    sink: int,
    i: int,
    d: Optional[int] = None,
) -> tuple[float, float]:
    """Return `C_eff(G_i <-> G_{i+2}; G)` and its bound `2 d**(i+1) C_eff(source <-> sink; G)`."""
    sol = solve_voltage(net, source, sink)
    d = max(sol.degree, 2) if d is None else d
    levels = level_indices(sol.potentials, d)

    upper, lower = np.flatnonzero(levels == i), np.flatnonzero(levels == i + 2)
    if not len(upper) or not len(lower):
        raise ValidationError(f"levels {i} and {i + 2} must be nonempty at d={d}")

    value = effective_conductance(net, upper, lower)
    return value, 2.0 * float(d)**(i + 1) * sol.conductance


def layer_conductance(
    net: Network,
    source: int,
    sink: int,
    i: int,
    trace: Optional[TraceNetwork] = None,
    **parameters: str,
) -> BoundReport:
    """Check `C_eff(G_i <-> G_{i+2}; trace network) <= 2d / (d - 1)`.

    Parameters
    ----------
    `net` : `Network`
        The host network.
    `source`, `sink` : `int`
        The walk's start and stopping vertex.
    `i` : `int`
        An eligible level (see `eligible_levels`).
    `trace` : `Optional[TraceNetwork]`
        A precomputed trace network of `net`, reused across levels.
    `parameters` : `str`
        Tags echoed into the report, such as the graph family.

    Raises
    ------
    `ValidationError`
        If `i` is not eligible.
    """
    trace = trace_network_exact(net, source, sink) if trace is None else trace
    sol = trace.solution
    d = max(sol.degree, 2)

    if i not in eligible_levels(net, sol, d):
        raise ValidationError(f"level {i} is not eligible at d={d}")

    levels = level_indices(sol.potentials, d)
    value = effective_conductance(trace.network(), np.flatnonzero(levels == i), np.flatnonzero(levels == i + 2))

    return check_bound("layer_conductance", value, 2.0 * d / (d - 1), level=int(i), d=int(d), **parameters)


def layer_conductances(net: Network, source: int, sink: int, **parameters: str) -> list[BoundReport]:
    """`layer_conductance` for every eligible level, sharing one trace network."""
    trace = trace_network_exact(net, source, sink)
    return [
        layer_conductance(net, source, sink, i, trace=trace, **parameters)
        for i in eligible_levels(net, trace.solution)
    ]
