"""
Base class of the packaged experiments.
"""
from __future__ import annotations

from typing import Optional

import numpy as np
from pandas import DataFrame

from cutpath.common.exceptions import ValidationError
from cutpath.common.log import CUTPATH_LOGGER
from cutpath.helpers import replica_rng
from cutpath.schemas.experiment import ExperimentConfig
from cutpath.schemas.report import BoundReport
from cutpath.walks.simulation import pass_window

LOGGER = CUTPATH_LOGGER.getChild("calculations")

Rows = dict[str, list[dict]]


class Experiment:
    """An experiment run as independent replicas.

    Subclasses build their shared inputs in `prepare`, produce rows for one
    replica in `replica` and reduce all rows in `aggregate` and `check`.
    Instances are shipped to worker processes, so everything set up by
    `prepare` must be picklable.

    Attributes
    ==========
    `config` : `ExperimentConfig`
        The resolved configuration.
    `seed` : `int`
        The master seed.
    `number` : `int`
        The experiment number, part of every replica's stream key.
    """

    ID = ""
    DESCRIPTION = ""
    REPLICATED = True

    def __init__(self, config: ExperimentConfig) -> None:
        if config.experiment.id != self.ID:
            raise ValidationError(f"{type(self).__name__} runs {self.ID}, not {config.experiment.id}")
        self.config = config
        self.seed = config.experiment.seed
        self.number = config.experiment.number

    @property
    def replicas(self) -> int:
        return self.config.run.replicas if self.REPLICATED else 1

    def rng(self, replica: int) -> np.random.Generator:
        """The random stream of `replica`."""
        return replica_rng(self.seed, self.number, replica)

    def prepare(self) -> None:
        """Build the inputs shared by all replicas."""

    def replica(self, replica: int) -> Rows:
        """Run one replica.

        Parameters
        ----------
        `replica` : `int`
            The replica index.

        Returns
        -------
        `dict[str, list[dict]]`
            Rows per output table.
        """
        raise NotImplementedError

    def aggregate(self, tables: dict[str, DataFrame]) -> dict[str, DataFrame]:
        """Reduce the per-replica tables to means with 3 sigma half-widths."""
        raise NotImplementedError

    def check(self, tables: dict[str, DataFrame], aggregates: dict[str, DataFrame]) -> list[BoundReport]:
        """Compare the aggregates with the bounds they should respect."""
        return []

    def __str__(self) -> str:
        return f"{self.ID}: {self.DESCRIPTION}"


def census_layers(beta: float, j_max: int, first: int = 1) -> list[int]:
    """Centers `j >= first` whose pass window fits in `[0, j_max]`."""
    layers = []
    for j in range(max(first, 1), j_max + 1):
        j_minus, j_plus = pass_window(j, beta)
        if j_plus > j_max:
            break
        if j_minus >= 0:
            layers.append(j)
    return layers


def complete_blocks(j_max: int, js: Optional[list[int]] = None) -> list[int]:
    """Dyadic blocks `(2**k, 2**(k+1)]` inside `[1, j_max]` and, if given, inside `js`."""
    members = set(js) if js is not None else None
    blocks = []
    k = 0
    while 2**(k + 1) <= j_max:
        if members is None or all(j in members for j in range(2**k + 1, 2**(k + 1) + 1)):
            blocks.append(k)
        k += 1
    return blocks
