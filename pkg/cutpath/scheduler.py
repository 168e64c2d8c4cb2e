"""
Replica scheduler.

Replicas are independent: each one derives its own random stream from
``(seed, experiment, replica)`` and the scheduler hands results back in
replica order, so aggregates do not depend on the number of workers.
"""
from __future__ import annotations

import os
from multiprocessing import Pool
import time
from typing import Callable, Iterable, Optional, TypeVar

from .common.exceptions import ValidationError
from .common.log import CUTPATH_LOGGER

LOGGER = CUTPATH_LOGGER.getChild("scheduler")

WORKERS_ENV = "CUTPATH_THREADS"

T = TypeVar("T")


def resolve_workers(requested: int = 1) -> int:
    """Worker count, overridden by the `CUTPATH_THREADS` environment variable.

    :raises ValidationError: if the environment value is not a positive integer
    """
    value = os.environ.get(WORKERS_ENV)
    if value is None or not value.strip():
        return max(1, int(requested))
    try:
        workers = int(value)
    except ValueError as err:
        raise ValidationError(f"{WORKERS_ENV}={value!r} is not an integer") from err
    if workers < 1:
        raise ValidationError(f"{WORKERS_ENV} must be positive (got {workers})")
    return workers


class ReplicaScheduler:
    """Run a task over replica indices on a pool of worker processes.

    Attributes
    ==========
    `workers` : `int`
        Number of worker processes; 1 runs in the calling process.
    `chunksize` : `int`
        Replicas handed to a worker at a time.
    """

    def __init__(self, workers: int = 1, chunksize: int = 1) -> None:
        self.workers = resolve_workers(workers)
        self.chunksize = max(1, int(chunksize))
        self.elapsed = 0.0

    def map(self, task: Callable[[int], T], replicas: Iterable[int]) -> list[T]:
        """Return `[task(r) for r in replicas]`, in that order.

        `task` must be picklable (a module-level function or a
        `functools.partial` of one) when more than one worker is used.
        """
        replicas = list(replicas)
        start = time.perf_counter()

        if self.workers == 1 or len(replicas) < 2:
            results = []
            for count, replica in enumerate(replicas, start=1):
                results.append(task(replica))
                LOGGER.debug(f"replica {replica} done ({count}/{len(replicas)})")
        else:
            LOGGER.debug(f"dispatching {len(replicas)} replicas to {self.workers} workers")
            with Pool(self.workers) as pool:
                results = pool.map(task, replicas, chunksize=self.chunksize)

        self.elapsed = time.perf_counter() - start
        return results

    def __str__(self) -> str:
        return f"ReplicaScheduler(workers={self.workers}, chunksize={self.chunksize})"


def run_replicas(
    task: Callable[[int], T],
    replicas: int,
    workers: int = 1,
    first: int = 0,
    chunksize: Optional[int] = None,
) -> list[T]:
    """Shortcut for `ReplicaScheduler(workers).map(task, range(first, first + replicas))`."""
    chunksize = chunksize or max(1, replicas // (4 * max(1, workers)))
    return ReplicaScheduler(workers, chunksize).map(task, range(first, first + replicas))
