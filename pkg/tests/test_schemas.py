"""Tests for the configuration and report models."""
import pydantic
import pytest

from cutpath.schemas import PRESETS, BoundReport, build_experiment_config
from cutpath.schemas.experiment import load_experiment_config
from cutpath.schemas.generators import StopCondition


def test_bound_report():
    report = BoundReport(quantity="q", value=1.0, bound=0.5)
    assert not report.satisfied
    assert not report.empirical

    report = BoundReport(quantity="q", value=1.0, bound=0.5, half_width=0.6, parameters={"k": 3})
    assert report.satisfied
    assert report.as_row() == {
        "quantity": "q",
        "value": 1.0,
        "half_width": 0.6,
        "bound": 0.5,
        "satisfied": True,
        "param_k": 3,
    }

    with pytest.raises(pydantic.ValidationError):
        BoundReport(quantity="q", value=1.0, bound=0.5, half_width=-1.0)
    with pytest.raises(pydantic.ValidationError):
        BoundReport(quantity="q", value=1.0, bound=0.5, extra=1)


def test_conservative_and_strict_reports():
    assert BoundReport(quantity="q", value=0.4, bound=0.5, half_width=0.1, conservative=True).satisfied
    assert not BoundReport(quantity="q", value=0.45, bound=0.5, half_width=0.1, conservative=True).satisfied

    assert BoundReport(quantity="q", value=0.5, bound=0.5).satisfied
    assert not BoundReport(quantity="q", value=0.5, bound=0.5, strict=True).satisfied
    assert not BoundReport(quantity="q", value=0.0, bound=0.0, half_width=0.0, conservative=True,
                           strict=True).satisfied

    report = BoundReport(quantity="q", value=0.4, bound=0.5, half_width=0.1, conservative=True, strict=True)
    assert not report.satisfied
    report.half_width = 0.05
    assert report.satisfied


def test_every_experiment_has_a_preset():
    assert sorted(PRESETS) == ["E1", "E2", "E3", "E4", "E5", "E6"]
    for experiment_id in PRESETS:
        config = build_experiment_config(experiment_id)
        assert config.experiment.id == experiment_id
        assert config.experiment.number == int(experiment_id[1:])


def test_presets():
    assert build_experiment_config("E1").walk.trend_from == 3
    assert build_experiment_config("E3").graph.depths == [2, 4, 8, 16, 32, 64]
    assert build_experiment_config("E4").graph.family == "disk"
    assert build_experiment_config("E6").bounds.a == [8, 16, 32]


def test_sections_then_overrides():
    sections = {"experiment": {"id": "E2", "seed": "5"}, "walk": {"M": "4", "beta": "0.6"}, "run": {"replicas": "7"}}
    config = build_experiment_config("E2", sections, {"experiment": {"seed": 9, "out": None}, "run": {"workers": None}})

    assert config.experiment.seed == 9
    assert config.experiment.out == "results"
    assert config.walk.M == 4
    assert config.walk.beta == 0.6
    assert config.run.replicas == 7
    assert config.run.workers == 1
    # untouched preset values survive
    assert config.graph.j_max == 512


def test_list_values_from_strings():
    config = build_experiment_config("E5", {"walk": {"horizons": "10, 100,1000"}})
    assert config.walk.horizons == [10, 100, 1000]


@pytest.mark.parametrize(
    "sections",
    [
        {"walk": {"unknown": "1"}},
        {"mystery": {"x": "1"}},
        {"walk": {"beta": "1.5"}},
        {"graph": {"alpha": "1.0"}},
        {"experiment": {"seed": "-1"}},
        {"bounds": {"a": "1,8"}},
    ],
)
def test_invalid_sections(sections):
    with pytest.raises(pydantic.ValidationError):
        build_experiment_config("E6", sections)


def test_config_for_another_experiment():
    with pytest.raises(ValueError):
        build_experiment_config("E6", {"experiment": {"id": "E4"}})
    with pytest.raises(ValueError):
        build_experiment_config("E7")


def test_load_experiment_config_from_file(tmp_path):
    path = tmp_path / "e4.cfg"
    path.write_text("[experiment]\nid = E4\nseed = 3\n\n[graph]\nradius = 8\n\n[walk]\nhalf_radius = false\n")
    config = load_experiment_config("E4", path, {"run": {"replicas": 2}})

    assert config.experiment.seed == 3
    assert config.graph.radius == 8
    assert config.walk.half_radius is False
    assert config.run.replicas == 2
    assert config.echo()["graph"]["radius"] == 8


def test_stop_condition_parse():
    assert StopCondition.parse("vertex:3,4", 10).targets == [3, 4]
    assert StopCondition.parse("layer:5", 10).layer == 5

    budget_only = StopCondition.parse("budget", 10)
    assert budget_only.targets is None
    assert budget_only.layer is None
    assert budget_only.budget == 10

    with pytest.raises(ValueError):
        StopCondition.parse("forever", 10)
    with pytest.raises(ValueError):
        StopCondition.parse("vertex:", 10)
    with pytest.raises(ValueError):
        StopCondition.parse("budget", 0)
