from __future__ import annotations

from cutpath.common.exceptions import ValidationError

from .base import Experiment
from .conductance import DiskConductance
from .cutpoints import CutpointCensus
from .linking import LinkingCensus
from .minima import MinimaGrowth
from .profiles import ResistanceProfiles
from .srw import OracleSweep

EXPERIMENTS: dict[str, type[Experiment]] = {
    cls.ID: cls for cls in (
        CutpointCensus,
        LinkingCensus,
        ResistanceProfiles,
        DiskConductance,
        MinimaGrowth,
        OracleSweep,
    )
}


def ExperimentFactory(experiment_id: str) -> type[Experiment]:
    """Return the experiment class registered under `experiment_id`.

    Raises
    ------
    `ValidationError`
        If no experiment is registered under `experiment_id`.
    """
    try:
        return EXPERIMENTS[experiment_id]
    except KeyError as err:
        raise ValidationError(f"no experiment registered as '{experiment_id}'") from err
