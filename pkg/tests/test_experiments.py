"""Small end-to-end runs of the packaged experiments."""
import os

import pytest
import yaml
from pandas import DataFrame

from cutpath.calculations import ExperimentFactory
from cutpath.calculations.base import census_layers, complete_blocks
from cutpath.common.exceptions import ValidationError
from cutpath.parsers import read_csv
from cutpath.schemas import build_experiment_config
from cutpath.schemas.experiment import load_experiment_config
from cutpath.workflows.experiment import run_experiment

from . import TEST_DIR

E6_CONFIG = os.path.join(TEST_DIR, "input_files", "e6.cfg")


def test_census_helpers():
    assert complete_blocks(10) == [0, 1, 2]
    assert complete_blocks(10, [3, 4, 5, 6, 7, 8]) == [1, 2]
    assert census_layers(0.7, 10) == [1, 2, 3, 4, 5, 6]


def test_experiment_rejects_a_foreign_config():
    with pytest.raises(ValidationError):
        ExperimentFactory("E4")(build_experiment_config("E6"))


def test_oracle_sweep_outputs(tmp_path):
    config = load_experiment_config("E6", E6_CONFIG)
    report = run_experiment(config, out=tmp_path)

    names = sorted(os.path.basename(path) for path in report.files)
    assert names == ["E6_aggregate_summary.csv", "E6_bounds.csv", "E6_summary.yaml", "E6_sweep.csv"]

    # t = 0..40 for both targets, m = 0..16 for a = 8 and 0..40 for a = 20
    assert len(report.tables["sweep"]) == 41 + 17 + 41 + 41
    assert len(report.bounds) == 4
    assert report.satisfied

    sweep, echoed = read_csv(tmp_path / "E6_sweep.csv")
    assert echoed["experiment.seed"] == "7"
    assert echoed["bounds.a"] == "8,20"
    assert set(sweep["quantity"]) == {"chernoff", "visits"}

    summary = yaml.safe_load((tmp_path / "E6_summary.yaml").read_text())
    assert summary["experiment"] == "E6"
    assert summary["satisfied"] is True
    assert summary["checks"]["chernoff_violations"] == {"satisfied": 2, "violated": 0}
    assert summary["files"] == ["E6_sweep.csv", "E6_aggregate_summary.csv", "E6_bounds.csv"]
    assert "runtime_seconds" not in summary


def test_oracle_sweep_is_reproducible(tmp_path):
    config = load_experiment_config("E6", E6_CONFIG)
    run_experiment(config, out=tmp_path / "first")
    run_experiment(config, out=tmp_path / "second")

    for name in ("E6_sweep.csv", "E6_aggregate_summary.csv", "E6_bounds.csv", "E6_summary.yaml"):
        assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()


def test_disk_conductance():
    config = build_experiment_config("E4", {"graph": {"radius": 20}, "run": {"replicas": 10}})
    report = run_experiment(config, write=False)

    replicas = report.tables["replicas"]
    assert replicas["replica"].tolist() == list(range(10))
    assert set(replicas["stop_reason"]) == {"hit_target"}
    assert (replicas["C_path"] <= replicas["C_counted"] + 1e-12).all()
    assert (replicas["R_path"] * replicas["C_path"]).round(12).eq(1.0).all()

    summary = report.aggregates["summary"].iloc[0]
    assert summary["n"] == 10
    assert 0 < summary["s"] < 1
    assert summary["d"] == 4

    by_quantity = {}
    for bound in report.bounds:
        by_quantity.setdefault(bound.quantity, []).append(bound)
    assert by_quantity["layer_conductance"]
    assert all(bound.satisfied for bound in by_quantity["layer_conductance"])
    assert by_quantity["path_below_counted"][0].satisfied
    assert len(report.aggregates["levels"]) == len(by_quantity["layer_conductance"])


def test_disk_conductance_is_reproducible():
    config = build_experiment_config("E4", {"graph": {"radius": 5}, "run": {"replicas": 4}})
    first = run_experiment(config, write=False).tables["replicas"]
    second = run_experiment(config, write=False).tables["replicas"]
    assert first.equals(second)


def test_cutpoint_census():
    config = build_experiment_config("E1", {"graph": {"j_max": 10}, "run": {"replicas": 3}})
    report = run_experiment(config, write=False)

    assert len(report.tables["replicas"]) == 3
    assert report.tables["blocks"]["k"].tolist() == [0, 1, 2] * 3
    assert report.aggregates["blocks"]["n"].tolist() == [3, 3, 3]
    assert report.aggregates["walks"]["n"].tolist() == [3]


def test_linking_census():
    config = build_experiment_config("E2", {"graph": {"j_max": 64}, "run": {"replicas": 5}})
    report = run_experiment(config, write=False)

    layers = report.aggregates["layers"]
    assert layers["j"].tolist() == census_layers(0.7, 64)
    assert layers["p_exact"].between(0.0, 1.0).all()
    assert set(report.tables["layers"]["unlinked"]) <= {0, 1}
    assert report.tables["replicas"]["absorbed"].all()


def test_resistance_profiles():
    config = build_experiment_config("E3", {"graph": {"j_max": 16, "depths": "2,4,8,16"}, "run": {"replicas": 2}})
    report = run_experiment(config, write=False)

    profiles = report.aggregates["profiles"]
    assert profiles["depth"].tolist() == [2, 4, 8, 16]
    # the host profile increases with depth and stays below the PATH profile
    host = profiles["R_host"].to_numpy()
    assert (host[1:] > host[:-1]).all()
    assert (profiles["R_path_mean"] >= profiles["R_host"] - 1e-9).all()


def test_resistance_profiles_on_the_horn():
    config = build_experiment_config("E3", {
        "graph": {"family": "horn", "x1_max": 16, "depths": "2,4,8,16"},
        "run": {"replicas": 2},
    })
    report = run_experiment(config, write=False)

    host = report.aggregates["profiles"]["R_host"].to_numpy()
    assert (host[1:] > host[:-1]).all()
    assert (report.tables["replicas"]["deepest"] == 16).all()

    decay = [bound for bound in report.bounds if bound.quantity == "horn_increment_decay"]
    assert [bound.parameters["depth"] for bound in decay] == [8, 16]
    assert all(bound.satisfied for bound in decay)
    assert not any(bound.quantity == "host_increment_decay" for bound in report.bounds)


def test_resistance_profiles_reject_the_disk():
    config = build_experiment_config("E3", {"graph": {"family": "disk"}})
    with pytest.raises(ValidationError):
        ExperimentFactory("E3")(config).prepare()


def test_resistance_profiles_need_reachable_depths():
    config = build_experiment_config("E3", {"graph": {"j_max": 16, "depths": "4,32"}})
    with pytest.raises(ValidationError):
        ExperimentFactory("E3")(config).prepare()


def test_minima_growth():
    config = build_experiment_config("E5", {
        "graph": {"j_max": 256},
        "walk": {"horizons": "100,1000"},
        "run": {"replicas": 4},
    })
    report = run_experiment(config, write=False)

    replicas = report.tables["replicas"]
    assert replicas["horizon"].tolist() == [100, 1000] * 4
    assert (replicas["n_certified"] <= replicas["n_minima"]).all()
    assert replicas["unsound"].sum() == 0
    assert report.aggregates["recovery"]["count"].sum() == report.tables["recovery"]["count"].sum()

    unsound = [bound for bound in report.bounds if bound.quantity == "certified_cut_times_unsound"]
    assert len(unsound) == 1 and unsound[0].satisfied


def test_minima_growth_rejects_stagnating_sums():
    experiment = ExperimentFactory("E5")(build_experiment_config("E5"))
    experiment.horizons = [1000, 10000, 100000]
    replicas = DataFrame([{
        "replica": replica,
        "horizon": horizon,
        "lower_bound_sum": 2.5,
        "unsound": 0
    } for replica in range(3) for horizon in experiment.horizons])
    recovery = DataFrame(columns=["ratio_low", "ratio_high", "count", "recovered", "frequency", "half_width"])

    reports = experiment.check({"replicas": replicas}, {"recovery": recovery})
    growth = [report for report in reports if report.quantity == "minima_sum_growth"]

    assert [report.parameters["horizon"] for report in growth] == [10000, 100000]
    assert not any(report.satisfied for report in growth)

    replicas["lower_bound_sum"] += replicas["horizon"].map({1000: 0.0, 10000: 1.0, 100000: 2.0})
    reports = experiment.check({"replicas": replicas}, {"recovery": recovery})
    assert all(report.satisfied for report in reports if report.quantity == "minima_sum_growth")
