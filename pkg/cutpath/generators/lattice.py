"""
Subgraphs of the integer lattice: horns in `Z^d` and the `Z^2` disk with
its outside contracted to a sink.
"""
from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from cutpath.common.exceptions import ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.data.network import Network
from cutpath.schemas.generators import GridDiskSpec, HornSpec

LOGGER = CUTPATH_LOGGER.getChild("lattice")


def horn_profile(x: np.ndarray | float, spec: HornSpec) -> np.ndarray:
    """`f(x) = max(f_floor, (x ln(x)**alpha)**(1/(d-1)))`, `f_floor` for `x < 2`."""
    x = np.asarray(x, dtype=float)
    safe = np.maximum(x, 2.0)
    grown = (safe * np.log(safe)**spec.alpha)**(1.0 / (spec.dimension - 1))
    return np.where(x < 2, spec.f_floor, np.maximum(spec.f_floor, grown))


def is_horn_member(point: Sequence[int], spec: HornSpec) -> bool:
    """Whether `0 <= x_1 <= x1_max` and `x_2**2 + ... + x_d**2 <= f(x_1)**2`."""
    point = np.asarray(point)
    if len(point) != spec.dimension or not 0 <= point[0] <= spec.x1_max:
        return False
    return bool(np.sum(point[1:]**2) <= horn_profile(point[0], spec)**2)


def _encode(coordinates: np.ndarray, shift: int, base: int) -> np.ndarray:
    keys = np.zeros(len(coordinates), dtype=np.int64)
    for axis in range(coordinates.shape[1]):
        keys = keys * base + (coordinates[:, axis] + shift)
    return keys


def _lattice_edges(coordinates: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest-neighbour pairs with both ends in `coordinates` (one per pair)."""
    shift = int(np.abs(coordinates).max()) + 1
    base = 2 * shift + 1
    keys = _encode(coordinates, shift, base)
    order = np.argsort(keys)
    sorted_keys = keys[order]

    tails, heads = [], []
    for axis in range(coordinates.shape[1]):
        step = np.zeros(coordinates.shape[1], dtype=np.int64)
        step[axis] = 1
        neighbour_keys = _encode(coordinates + step, shift, base)
        slots = np.minimum(np.searchsorted(sorted_keys, neighbour_keys), len(sorted_keys) - 1)
        inside = sorted_keys[slots] == neighbour_keys
        tails.append(np.flatnonzero(inside))
        heads.append(order[slots[inside]])

    return np.concatenate(tails), np.concatenate(heads)


def build_horn(spec: HornSpec) -> Network:
    """Build the horn of `f` truncated at `x_1 <= x1_max`.

    Vertices are sorted by `x_1`, then by distance to the axis, then
    lexicographically. The origin is vertex 0 and is recorded as terminal
    `"origin"`; the layer label is `x_1`.
    """
    d = spec.dimension
    chunks = []
    for x1 in range(spec.x1_max + 1):
        radius = float(horn_profile(x1, spec))
        reach = int(np.floor(radius))
        axis = np.arange(-reach, reach + 1)
        cross = np.array(list(itertools.product(axis, repeat=d - 1)), dtype=np.int64).reshape(-1, d - 1)
        cross = cross[np.sum(cross**2, axis=1) <= radius**2]
        chunks.append(np.column_stack([np.full(len(cross), x1), cross]))

    coordinates = np.concatenate(chunks)
    keys = [coordinates[:, k] for k in range(d - 1, 0, -1)]
    keys += [np.sum(coordinates[:, 1:]**2, axis=1), coordinates[:, 0]]
    coordinates = coordinates[np.lexsort(keys)]
    tails, heads = _lattice_edges(coordinates)

    origin = int(np.flatnonzero(~coordinates.any(axis=1))[0])
    net = Network(
        len(coordinates),
        tails,
        heads,
        np.ones(len(tails)),
        labels={"layer": coordinates[:, 0]},
        coordinates=coordinates,
        terminals={"origin": origin},
    )
    LOGGER.debug(f"horn d={d}, alpha={spec.alpha}, x1_max={spec.x1_max}: {net}")
    return net


def build_grid_disk(r: int | GridDiskSpec) -> Network:
    """The `Z^2` points of norm at most `r` plus one sink for everything outside.

    Every lattice edge leaving the disk becomes an edge to the sink, so
    every interior vertex has degree 4 (parallel sink edges are kept).
    Vertices are sorted by norm; the origin is vertex 0 and the sink the
    last vertex, recorded as terminals `"origin"` and `"sink"`. The layer
    label is the integer part of the norm, `r + 1` for the sink, whose
    coordinates are set to the outside point `(r + 1, 0)`.

    Raises
    ------
    `ValidationError`
        If `r < 2`.
    """
    r = r.radius if isinstance(r, GridDiskSpec) else int(r)
    if r < 2:
        raise ValidationError(f"disk radius must be at least 2 (got {r})")

    axis = np.arange(-r, r + 1)
    grid = np.array(list(itertools.product(axis, axis)), dtype=np.int64)
    norms2 = np.sum(grid**2, axis=1)
    grid, norms2 = grid[norms2 <= r * r], norms2[norms2 <= r * r]
    order = np.lexsort((grid[:, 1], grid[:, 0], norms2))
    grid, norms2 = grid[order], norms2[order]

    n_inside = len(grid)
    sink = n_inside

    tails, heads = _lattice_edges(grid)

    # one sink edge per lattice step out of the disk
    outward = []
    for step in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        outside = np.sum((grid + step)**2, axis=1) > r * r
        outward.append(np.flatnonzero(outside))
    outward = np.sort(np.concatenate(outward), kind="stable")

    tails = np.concatenate([tails, outward])
    heads = np.concatenate([heads, np.full(len(outward), sink)])

    layers = np.append(np.floor(np.sqrt(norms2)).astype(np.int64), r + 1)
    coordinates = np.vstack([grid, [[r + 1, 0]]])

    net = Network(
        n_inside + 1,
        tails,
        heads,
        np.ones(len(tails)),
        labels={"layer": layers},
        coordinates=coordinates,
        terminals={"origin": 0, "sink": sink},
    )
    LOGGER.debug(f"grid disk r={r}: {net}")
    return net


def layer_boundaries(net: Network, depths: Sequence[int]) -> list[np.ndarray]:
    """For every depth `n`, the vertices whose layer label is at least `n`.

    Raises
    ------
    `ValidationError`
        If the network has no layer label or a boundary is empty.
    """
    if net.layers is None:
        raise ValidationError("layer boundaries need a network with a 'layer' label")

    boundaries = []
    for depth in depths:
        members = np.flatnonzero(net.layers >= depth)
        if not len(members):
            raise ValidationError(f"no vertex at layer {depth} or beyond")
        boundaries.append(members)
    return boundaries
