"""Tests for the command line."""
import os

import pytest

from cutpath.cli import cli_dispatch
from cutpath.parsers import read_csv, read_metadata, read_network, read_trace_binary

from . import TEST_DIR

INPUT_DIR = os.path.join(TEST_DIR, "input_files")
SQUARE = os.path.join(INPUT_DIR, "square.ug")


def _values(output):
    return dict(line.split("=", 1) for line in output.splitlines() if "=" in line)


def test_usage_errors():
    assert cli_dispatch(["--no-such-flag"]) == 1
    assert cli_dispatch(["resist", "--graph", "missing.ug", "--source", "0", "--sink", "1"]) == 1
    assert cli_dispatch(["experiment", "run", "E9"]) == 1


def test_resist(capsys):
    assert cli_dispatch(["resist", "--graph", SQUARE, "--source", "0", "--sink", "2"]) == 0
    values = _values(capsys.readouterr().out)

    assert float(values["C_eff"]) == pytest.approx(11 / 6)
    assert float(values["R_eff"]) == pytest.approx(6 / 11)
    # the source is a neighbor of the sink
    assert float(values["s"]) == 1.0


def test_resist_between_one_vertex():
    assert cli_dispatch(["resist", "--graph", SQUARE, "--source", "2", "--sink", "2"]) == 1


def test_bounds_to_stdout(capsys):
    assert cli_dispatch(["bounds", "--a", "20", "--t", "10", "--m", "0:2"]) == 0
    lines = capsys.readouterr().out.splitlines()

    assert lines[0] == "quantity,a,t_or_m,exact,bound,satisfied"
    assert len(lines) == 1 + 1 + 3
    assert lines[1].startswith("chernoff,20,10,0,")
    assert lines[2].startswith("visits,20,0,1,2,")


def test_bounds_to_file(tmp_path):
    out = tmp_path / "sweep.csv"
    assert cli_dispatch(["bounds", "--a", "8,10", "--t", "0:5", "--m", "3", "--out", str(out)]) == 0

    sweep, echoed = read_csv(out)
    assert echoed["a"] == "8,10"
    assert len(sweep) == 2 * (6 + 1)
    assert sweep["satisfied"].all()


def test_bounds_with_a_bad_grid():
    assert cli_dispatch(["bounds", "--a", "8", "--t", "x"]) == 1
    assert cli_dispatch(["bounds", "--a", "7", "--t", "1", "--m", "1"]) == 1


def test_unwritable_output(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    out = blocker / "sweep.csv"
    assert cli_dispatch(["bounds", "--a", "8", "--t", "1", "--m", "1", "--out", str(out)]) == 2


def test_generate_then_walk(tmp_path):
    graph = tmp_path / "disk.ug"
    assert cli_dispatch(["generate", "--family", "disk", "--radius", "5", "--out", str(graph)]) == 0

    metadata = read_metadata(f"{graph}.meta")
    assert metadata["family"] == "disk"
    sink = int(metadata["sink"])
    assert read_network(graph).n_vertices == sink + 1

    prefix = tmp_path / "walks" / "w"
    assert cli_dispatch([
        "walk", "--graph", str(graph), "--stop", f"vertex:{sink}", "--seed", "3", "--replicas", "2", "--trace",
        "--out", str(prefix)
    ]) == 0

    summary, echoed = read_csv(f"{prefix}_summary.csv")
    assert echoed["stop"] == f"vertex:{sink}"
    assert summary["replica"].tolist() == [0, 1]
    assert set(summary["stop_reason"]) == {"hit_target"}

    vertices = read_trace_binary(f"{prefix}_r1.trace")
    assert vertices[0] == 0
    assert vertices[-1] == sink
    assert len(vertices) == summary["steps"][1] + 1


def test_generate_layered(tmp_path):
    graph = tmp_path / "layered.ug"
    assert cli_dispatch(["generate", "--jmax", "4", "--seed", "2", "--out", str(graph)]) == 0
    assert read_network(graph).layers.max() == 4
    assert read_metadata(f"{graph}.meta")["j0"] == "2"


def test_walk_with_a_large_budget(tmp_path):
    prefix = tmp_path / "w"
    assert cli_dispatch([
        "walk", "--graph", SQUARE, "--stop", "vertex:1", "--budget", "20000000", "--trace", "--out", str(prefix)
    ]) == 0

    summary, _ = read_csv(f"{prefix}_summary.csv")
    assert summary["stop_reason"].tolist() == ["hit_target"]
    assert len(read_trace_binary(f"{prefix}_r0.trace")) == summary["steps"][0] + 1


def test_walk_with_an_unknown_stop(tmp_path):
    assert cli_dispatch(["walk", "--graph", SQUARE, "--stop", "forever", "--out", str(tmp_path / "w")]) == 1


def test_experiment_run(tmp_path, capsys):
    config = os.path.join(INPUT_DIR, "e6.cfg")
    assert cli_dispatch(["experiment", "run", "E6", "--config", config, "--out", str(tmp_path)]) == 0

    assert "E6: 4 checks, 0 violated" in capsys.readouterr().out
    assert sorted(os.listdir(tmp_path)) == [
        "E6_aggregate_summary.csv",
        "E6_bounds.csv",
        "E6_summary.yaml",
        "E6_sweep.csv",
    ]


def test_experiment_run_with_a_negative_seed(tmp_path):
    config = os.path.join(INPUT_DIR, "e6.cfg")
    assert cli_dispatch(["experiment", "run", "E6", "--config", config, "--seed", "-1", "--out", str(tmp_path)]) == 1
