"""Tests for the statistics helpers and the replica scheduler."""
import math

import numpy as np
from pandas import DataFrame
import pytest

from cutpath.common.exceptions import ValidationError
from cutpath.helpers import (
    dyadic_block,
    half_width,
    mean_table,
    proportion_half_width,
    replica_rng,
    standard_error,
    summarize,
    within,
)
from cutpath.scheduler import WORKERS_ENV, ReplicaScheduler, resolve_workers, run_replicas


def draw(replica):
    return float(replica_rng(11, 2, replica).random())


def test_replica_streams():
    assert replica_rng(3, 1, 4).random() == replica_rng(3, 1, 4).random()
    assert replica_rng(3, 1, 4).random() != replica_rng(3, 1, 5).random()
    assert replica_rng(3, 1, 4).random() != replica_rng(3, 2, 4).random()


def test_standard_error_and_half_width():
    assert math.isnan(standard_error([1.0]))
    assert half_width([1.0]) == 0.0
    assert half_width([2.0, 2.0, 2.0]) == 0.0
    assert standard_error([0.0, 2.0]) == pytest.approx(1.0)
    assert half_width([0.0, 2.0]) == pytest.approx(3.0)


def test_proportions():
    assert proportion_half_width(0.5, 100) == pytest.approx(0.15)
    assert proportion_half_width(0.5, 0) == math.inf
    assert within(1.1, 1.0, 0.2)
    assert not within(1.3, 1.0, 0.2)


def test_summarize():
    summary = summarize([1.0, 3.0])
    assert summary["mean"] == 2.0
    assert summary["n"] == 2
    assert math.isnan(summarize([])["mean"])


@pytest.mark.parametrize("j, k", [(2, 0), (3, 1), (4, 1), (5, 2), (8, 2), (9, 3), (1024, 9), (1025, 10)])
def test_dyadic_block(j, k):
    assert dyadic_block(j) == k


def test_dyadic_block_array():
    assert dyadic_block(np.array([2, 3, 4, 5])).tolist() == [0, 1, 1, 2]


def test_mean_table():
    frame = DataFrame({"k": [0, 0, 1], "x": [1.0, 3.0, 5.0]})
    table = mean_table(frame, "k", ["x"])

    assert table["k"].tolist() == [0, 1]
    assert table["n"].tolist() == [2, 1]
    assert table["x_mean"].tolist() == [2.0, 5.0]
    assert table["x_half_width"].tolist() == [pytest.approx(3.0), 0.0]


def test_resolve_workers(monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    assert resolve_workers(3) == 3
    assert resolve_workers(0) == 1

    monkeypatch.setenv(WORKERS_ENV, "2")
    assert resolve_workers(5) == 2

    for value in ("many", "0"):
        monkeypatch.setenv(WORKERS_ENV, value)
        with pytest.raises(ValidationError):
            resolve_workers(1)


def test_scheduler_keeps_replica_order(monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    serial = ReplicaScheduler(1).map(draw, range(6))
    pooled = ReplicaScheduler(2, chunksize=2).map(draw, range(6))

    assert serial == pooled
    assert serial == [draw(r) for r in range(6)]


def test_run_replicas(monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    assert run_replicas(draw, 3, first=2) == [draw(2), draw(3), draw(4)]
