"""
Weighted networks and the results of solving them.

A `Network` is the substrate for every graph in cutpath: the host graphs
built by `cutpath.generators`, the traversed subgraph PATH of a walk, the
crossing-count network G^N and the expected-crossing network of a trace.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np
from scipy import sparse

from cutpath.common.exceptions import ValidationError

Edge = tuple[int, int, float]


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class Network:
    """A weighted undirected multigraph with positive edge conductances.

    Edges are stored once, as parallel arrays of tails, heads and
    conductances indexed by edge id. Parallel edges and self-loops are
    kept in the data model; the electrical solvers merge parallel edges
    and ignore loops, the walk engine steps along every edge separately.

    Attributes
    ==========
    `n_vertices` : `int`
        Number of vertices; vertex ids are dense in `[0, n_vertices)`.
    `labels` : `dict[str, np.ndarray]`
        Optional integer vertex labels (`"layer"` is serialized).
    `coordinates` : `np.ndarray | None`
        Optional lattice coordinates, one row per vertex.
    `terminals` : `dict[str, int]`
        Named vertices such as `"origin"` and `"sink"`.
    """

    def __init__(
        self,
        n_vertices: int,
        tails: Sequence[int] | np.ndarray,
        heads: Sequence[int] | np.ndarray,
        conductances: Sequence[float] | np.ndarray,
        labels: Optional[Mapping[str, Sequence[int] | np.ndarray]] = None,
        coordinates: Optional[np.ndarray] = None,
        terminals: Optional[Mapping[str, int]] = None,
    ) -> None:
        self.n_vertices = int(n_vertices)
        self.tails = _frozen(np.array(tails, dtype=np.int64).reshape(-1))
        self.heads = _frozen(np.array(heads, dtype=np.int64).reshape(-1))
        self.conductances = _frozen(np.array(conductances, dtype=np.float64).reshape(-1))
        self.labels = {name: _frozen(np.array(values, dtype=np.int64)) for name, values in (labels or {}).items()}
        self.coordinates = None if coordinates is None else _frozen(np.array(coordinates, dtype=np.int64))
        self.terminals = dict(terminals or {})
        self.validate()

    def validate(self) -> None:
        """Check the network invariants.

        Raises
        ------
        `ValidationError`
            If the vertex count is not positive, an endpoint is out of
            range, or a conductance is not strictly positive and finite.
        """
        if self.n_vertices < 1:
            raise ValidationError(f"a network needs at least one vertex (got n={self.n_vertices})")

        if not len(self.tails) == len(self.heads) == len(self.conductances):
            raise ValidationError("tails, heads and conductances must have equal length")

        if len(self.tails):
            low = min(self.tails.min(), self.heads.min())
            high = max(self.tails.max(), self.heads.max())
            if low < 0 or high >= self.n_vertices:
                raise ValidationError(f"edge endpoint out of range [0, {self.n_vertices})")

            if not np.all(np.isfinite(self.conductances)) or np.any(self.conductances <= 0):
                bad = int(np.flatnonzero(~(self.conductances > 0) | ~np.isfinite(self.conductances))[0])
                raise ValidationError(f"edge {bad} has nonpositive or infinite conductance {self.conductances[bad]}")

        for name, values in self.labels.items():
            if len(values) != self.n_vertices:
                raise ValidationError(f"label '{name}' must have one entry per vertex")

        if self.coordinates is not None and len(self.coordinates) != self.n_vertices:
            raise ValidationError("coordinates must have one row per vertex")

        for name, vertex in self.terminals.items():
            if not 0 <= vertex < self.n_vertices:
                raise ValidationError(f"terminal '{name}' = {vertex} out of range")

    @property
    def n_edges(self) -> int:
        return len(self.tails)

    @property
    def layers(self) -> Optional[np.ndarray]:
        """The `"layer"` label, if present."""
        return self.labels.get("layer")

    @property
    def loops(self) -> np.ndarray:
        """Boolean mask of self-loops."""
        return self.tails == self.heads

    def edges(self) -> Iterator[Edge]:
        """Iterate over `(u, v, c)` triples in edge-id order."""
        for u, v, c in zip(self.tails.tolist(), self.heads.tolist(), self.conductances.tolist()):
            yield u, v, c

    def degrees(self) -> np.ndarray:
        """Multigraph degrees (a loop contributes two edge ends)."""
        n = self.n_vertices
        return np.bincount(self.tails, minlength=n) + np.bincount(self.heads, minlength=n)

    def conductance_totals(self) -> np.ndarray:
        """`C_x`, the sum of conductances of edges at each vertex.

        A loop is counted once, so that a loop of weight `w(j,j)` is the
        stay weight of the network walk.
        """
        n = self.n_vertices
        proper = ~self.loops
        return (
            np.bincount(self.tails, weights=self.conductances, minlength=n) +
            np.bincount(self.heads[proper], weights=self.conductances[proper], minlength=n)
        )

    @cached_property
    def conductance_matrix(self) -> sparse.csr_matrix:
        """Symmetric conductance matrix with parallel edges summed and loops dropped."""
        proper = ~self.loops
        rows = np.concatenate([self.tails[proper], self.heads[proper]])
        cols = np.concatenate([self.heads[proper], self.tails[proper]])
        vals = np.concatenate([self.conductances[proper], self.conductances[proper]])
        matrix = sparse.coo_matrix((vals, (rows, cols)), shape=(self.n_vertices, self.n_vertices)).tocsr()
        matrix.sum_duplicates()
        return matrix

    @cached_property
    def incidence(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Half-edge adjacency in CSR form: `(indptr, edge_ids, neighbors)`.

        Every proper edge appears at both endpoints, every loop once.
        """
        proper = ~self.loops
        edge_ids = np.arange(self.n_edges)
        owners = np.concatenate([self.tails, self.heads[proper]])
        others = np.concatenate([self.heads, self.tails[proper]])
        ids = np.concatenate([edge_ids, edge_ids[proper]])
        order = np.argsort(owners, kind="stable")
        indptr = np.zeros(self.n_vertices + 1, dtype=np.int64)
        np.cumsum(np.bincount(owners, minlength=self.n_vertices), out=indptr[1:])
        return indptr, ids[order], others[order]

    def neighbors(self, vertex: int) -> np.ndarray:
        """Neighbors of `vertex`, with multiplicity."""
        indptr, _, others = self.incidence
        return others[indptr[vertex]:indptr[vertex + 1]]

    def with_conductances(self, conductances: np.ndarray, mask: Optional[np.ndarray] = None) -> Network:
        """Return the network on the same vertices with new edge weights.

        Parameters
        ----------
        `conductances` : `np.ndarray`
            One conductance per edge of this network.
        `mask` : `np.ndarray | None`
            Boolean edge mask; edges outside it are dropped.
        """
        mask = np.ones(self.n_edges, dtype=bool) if mask is None else np.asarray(mask, dtype=bool)
        return Network(
            self.n_vertices,
            self.tails[mask],
            self.heads[mask],
            np.asarray(conductances, dtype=np.float64)[mask],
            labels=self.labels,
            coordinates=self.coordinates,
            terminals=self.terminals,
        )

    def __str__(self) -> str:
        string = f"Network(n={self.n_vertices}, m={self.n_edges}"
        if self.labels:
            string += f", labels={sorted(self.labels)}"
        if self.terminals:
            string += f", terminals={self.terminals}"
        return string + ")"

    __repr__ = __str__


def build_network(
    n: int,
    edges: Iterable[Edge],
    labels: Optional[Mapping[str, Sequence[int]]] = None,
) -> Network:
    """Build and validate a network from `(u, v, c)` triples.

    Parameters
    ----------
    `n` : `int`
        Number of vertices.
    `edges` : `Iterable[tuple[int, int, float]]`
        Edge list; parallel edges and loops are accepted.
    `labels` : `Mapping[str, Sequence[int]] | None`
        Optional per-vertex integer labels.

    Returns
    -------
    `Network`
        The validated network.

    Raises
    ------
    `ValidationError`
        If `n < 1`, an endpoint is out of range or a weight is not positive.
    """
    edges = list(edges)
    if any(len(edge) != 3 for edge in edges):
        raise ValidationError("edges must be (u, v, c) triples")
    tails = [int(u) for u, _, _ in edges]
    heads = [int(v) for _, v, _ in edges]
    conductances = [float(c) for _, _, c in edges]
    return Network(n, tails, heads, conductances, labels=labels)


@dataclass(frozen=True)
class VoltageSolution:
    """Harmonic potential of a network with one unit source and one sink.

    `potentials[x]` is the probability that the walk started at `x` hits
    `source` before `sink`. `levels[x]` is the unique integer `i` with
    `d**(-i-1) < v(x) <= d**(-i)`, or `-1` for the terminal class of
    vertices at potential 0 (the sink and anything cut off from it).
    """

    source: int
    sink: int
    potentials: np.ndarray
    conductance: float
    s: float
    degree: int
    levels: np.ndarray
    residual: float = 0.0

    @property
    def resistance(self) -> float:
        return 1.0 / self.conductance


@dataclass(frozen=True)
class SplitEdge:
    """One edge `(x, y)` of the base network replaced by `(x, z)` and `(z, y)`."""

    edge: int
    x: int
    y: int
    z: int
    c_xz: float
    c_zy: float


@dataclass(frozen=True)
class SubdividedNetwork:
    """A network whose level-crossing edges were split at threshold potentials.

    Vertices `0..base.n_vertices-1` are the old vertices; the new vertices
    follow. `z` and `z_prime` hold the vertices at potentials
    `thresholds[0] = d**(-i-1)` and `thresholds[1] = d**(-i-2)`; an old
    vertex sitting exactly at a threshold is listed there instead of a
    new vertex.
    """

    base: Network
    network: Network
    level: int
    d: int
    z: np.ndarray
    z_prime: np.ndarray
    thresholds: tuple[float, float]
    splits: tuple[SplitEdge, ...] = field(default_factory=tuple)
    potentials: Optional[np.ndarray] = None


@dataclass(frozen=True)
class TraceNetwork:
    """Expected crossing and visit counts of a walk from source to sink.

    `crossings[e]` is `E N(e)`, the expected number of crossings of edge
    `e` before the walk is stopped at the sink; `visits[x]` is the
    expected number of visits `g(x)`.
    """

    base: Network
    solution: VoltageSolution
    crossings: np.ndarray
    visits: np.ndarray

    @property
    def source(self) -> int:
        return self.solution.source

    @property
    def sink(self) -> int:
        return self.solution.sink

    def network(self) -> Network:
        """The network with conductance `E N(e)` on every edge that is ever crossed."""
        mask = self.crossings > 0
        return self.base.with_conductances(self.crossings, mask=mask)
