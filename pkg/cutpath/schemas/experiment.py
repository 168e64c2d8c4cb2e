"""
Experiment configuration.

A config file holds flat ``key=value`` lines under ``[experiment]``,
``[graph]``, ``[walk]``, ``[run]`` and ``[bounds]`` headers. Values are
layered: the shipped preset of the experiment, then the file, then command
line overrides. Unknown keys are rejected.
"""
from __future__ import annotations

import copy
from pathlib import Path
from typing import Dict, List, Literal, Mapping, Optional, Union

from pydantic import (
    BaseModel,
    Extra,
    NonNegativeInt,
    PositiveInt,
    confloat,
    conint,
    root_validator,
    validator,
)

from cutpath.common.log import CUTPATH_LOGGER

LOGGER = CUTPATH_LOGGER.getChild("config")

ExperimentId = Literal["E1", "E2", "E3", "E4", "E5", "E6"]


def _split_list(value):
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class _Section(BaseModel):

    class Config:
        validate_assignment = True
        extra = Extra.forbid


class ExperimentSection(_Section):
    id: ExperimentId
    seed: conint(ge=0, lt=2**64) = 0
    out: str = "results"

    @property
    def number(self) -> int:
        return int(self.id[1:])


class GraphSection(_Section):
    family: Literal["layered", "line", "disk", "horn"] = "layered"
    alpha: confloat(gt=1.0) = 2.0
    d: conint(ge=3) = 3
    j_max: NonNegativeInt = 80
    radius: conint(ge=2) = 30
    dimension: conint(ge=3) = 3
    x1_max: conint(ge=2) = 40
    f_floor: confloat(gt=0.0) = 1.5
    depths: List[PositiveInt] = []

    _depths = validator("depths", pre=True, allow_reuse=True)(_split_list)


class WalkSection(_Section):
    beta: confloat(gt=0.0, lt=1.0) = 0.7
    M: PositiveInt = 3
    budget: PositiveInt = 1_000_000
    lookahead: Optional[NonNegativeInt] = None  # T/10 when unset
    horizons: List[PositiveInt] = []
    laziness: confloat(ge=0.0, lt=1.0) = 0.0
    half_radius: bool = False
    trend_from: NonNegativeInt = 5  # first dyadic block of the trend checks

    _horizons = validator("horizons", pre=True, allow_reuse=True)(_split_list)


class RunSection(_Section):
    replicas: PositiveInt = 100
    workers: PositiveInt = 1
    batch: PositiveInt = 25


class BoundsSection(_Section):
    a: List[conint(ge=2)] = [8, 16, 32]
    t_max: PositiveInt = 2000
    m_factor: PositiveInt = 10  # m runs up to m_factor * a

    _a = validator("a", pre=True, allow_reuse=True)(_split_list)


class ExperimentConfig(_Section):
    """A fully resolved experiment configuration."""

    experiment: ExperimentSection
    graph: GraphSection = GraphSection()
    walk: WalkSection = WalkSection()
    run: RunSection = RunSection()
    bounds: BoundsSection = BoundsSection()

    @root_validator(skip_on_failure=True)
    def _flag_linking_regime(cls, values):
        walk = values["walk"]
        if not 0.5 < walk.beta < 1:
            LOGGER.warning(f"beta={walk.beta} lies outside (1/2, 1); the linking estimates do not apply")
        if walk.M <= 2 / (1 - walk.beta) + 2:
            LOGGER.warning(f"M={walk.M} does not exceed 2/(1-beta)+2={2 / (1 - walk.beta) + 2:.3g}")
        return values

    def echo(self) -> dict:
        """Nested plain-data copy, used as the config header of every output."""
        return self.dict()


PRESETS: Dict[str, Dict[str, Dict[str, object]]] = {
    "E1": {
        "graph": {"family": "layered", "alpha": 2.0, "d": 3, "j_max": 80},
        "walk": {"budget": 2_000_000, "beta": 0.7, "M": 3, "trend_from": 3},
        "run": {"replicas": 100},
    },
    "E2": {
        "graph": {"family": "line", "alpha": 2.0, "d": 3, "j_max": 512},
        "walk": {"beta": 0.7, "M": 3, "budget": 5_000_000},
        "run": {"replicas": 200},
    },
    "E3": {
        "graph": {"family": "layered", "alpha": 2.0, "d": 3, "j_max": 64, "depths": [2, 4, 8, 16, 32, 64]},
        "walk": {"budget": 2_000_000},
        "run": {"replicas": 20},
    },
    "E4": {
        "graph": {"family": "disk", "radius": 30, "alpha": 2.0, "d": 3, "j_max": 12},
        "walk": {"budget": 1_000_000, "half_radius": True},
        "run": {"replicas": 500},
    },
    "E5": {
        "graph": {"family": "line", "alpha": 2.0, "d": 3, "j_max": 4096},
        "walk": {"horizons": [1_000, 10_000, 100_000], "budget": 100_000},
        "run": {"replicas": 100},
    },
    "E6": {
        "bounds": {"a": [8, 16, 32], "t_max": 2000, "m_factor": 10},
        "run": {"replicas": 1},
    },
}


def _merge(base: dict, update: Mapping) -> dict:
    merged = copy.deepcopy(base)
    for section, values in update.items():
        if isinstance(values, Mapping):
            merged.setdefault(section, {}).update({key: value for key, value in values.items() if value is not None})
        else:
            merged[section] = values
    return merged


def build_experiment_config(
    experiment_id: str,
    sections: Optional[Mapping[str, Mapping[str, object]]] = None,
    overrides: Optional[Mapping[str, Mapping[str, object]]] = None,
) -> ExperimentConfig:
    """Resolve the preset of `experiment_id`, then `sections`, then `overrides`.

    Parameters
    ----------
    `experiment_id` : `str`
        One of `E1` to `E6`.
    `sections` : `Optional[Mapping]`
        Raw values per section, typically read from a config file.
    `overrides` : `Optional[Mapping]`
        Values from the command line; `None` entries are ignored.

    Raises
    ------
    `pydantic.ValidationError`
        If a value is out of range or a key is unknown.
    `ValueError`
        If the file names a different experiment.
    """
    if experiment_id not in PRESETS:
        raise ValueError(f"unknown experiment '{experiment_id}' (choose from {sorted(PRESETS)})")

    sections = dict(sections or {})
    named = sections.get("experiment", {}).get("id")
    if named is not None and named != experiment_id:
        raise ValueError(f"config file is for {named}, not {experiment_id}")

    raw = _merge({"experiment": {"id": experiment_id}}, PRESETS[experiment_id])
    raw = _merge(raw, sections)
    raw = _merge(raw, overrides or {})
    return ExperimentConfig.parse_obj(raw)


def load_experiment_config(
    experiment_id: str,
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Mapping[str, object]]] = None,
) -> ExperimentConfig:
    """`build_experiment_config` with the sections read from `path`."""
    from cutpath.parsers import read_config

    sections = read_config(path) if path is not None else None
    return build_experiment_config(experiment_id, sections, overrides)
