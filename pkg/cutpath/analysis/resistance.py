"""Resistance profiles from a root to nested boundary sets."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from cutpath.common.exceptions import ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.data.network import Network
from cutpath.electrical.solvers import effective_resistance
from cutpath.generators.lattice import layer_boundaries

LOGGER = CUTPATH_LOGGER.getChild("resistance")

MONOTONE_SLACK = 1e-9


def resistance_profile(
    net: Network,
    root: int,
    depths: Optional[Sequence[int]] = None,
    boundaries: Optional[Sequence[Sequence[int]]] = None,
) -> np.ndarray:
    """Effective resistance from `root` to a sequence of boundary sets.

    Parameters
    ----------
    `net` : `Network`
        The host graph or a traversed subgraph.
    `root` : `int`
        The root vertex.
    `depths` : `Optional[Sequence[int]]`
        Layer depths; boundary `n` is every vertex with layer label at
        least `depths[n]`.
    `boundaries` : `Optional[Sequence[Sequence[int]]]`
        Explicit boundary sets, used instead of `depths`.

    Returns
    -------
    `np.ndarray`
        `R_eff(root <-> boundary_n)` per boundary; nondecreasing for nested
        boundaries.

    Raises
    ------
    `ValidationError`
        If neither or both of `depths` and `boundaries` are given, or a
        boundary is empty.
    """
    if (depths is None) == (boundaries is None):
        raise ValidationError("give exactly one of depths and boundaries")
    if boundaries is None:
        boundaries = layer_boundaries(net, depths)

    profile = np.empty(len(boundaries))
    for n, boundary in enumerate(boundaries):
        boundary = np.asarray(boundary, dtype=np.int64)
        if not len(boundary):
            raise ValidationError(f"boundary {n} is empty")
        profile[n] = effective_resistance(net, [root], boundary)

    if np.any(np.diff(profile) < -MONOTONE_SLACK * np.maximum(1.0, profile[1:])):
        LOGGER.warning("resistance profile decreases; the boundaries are not nested")
    return profile
