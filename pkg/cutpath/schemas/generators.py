from typing import List, Optional

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


class _Spec(BaseModel):

    class Config:
        validate_assignment = True
        extra = Extra.forbid


class LayeredGraphSpec(_Spec):
    """Layers of `d`-regular expanders of size `2**k(j)`, `j = 0..j_max`."""

    alpha: confloat(gt=1.0) = 2.0
    d: conint(ge=3) = 3
    j_max: NonNegativeInt = 80
    seed: conint(ge=0, lt=2**64) = 0

    @root_validator(skip_on_failure=True)
    def _reaches_regular_layers(cls, values):
        from cutpath.generators.layered import layer_schedule

        _, j0 = layer_schedule(values["alpha"], 0)
        if values["j_max"] < j0:
            raise ValueError(f"j_max={values['j_max']} is below the first scheduled layer j0={j0}")
        return values


class HornSpec(_Spec):
    """The horn of `f(x) = (x ln(x)**alpha)**(1/(dimension-1))` in `Z**dimension`."""

    dimension: conint(ge=3) = 3
    alpha: confloat(gt=1.0) = 2.0
    x1_max: conint(ge=2) = 40
    f_floor: confloat(gt=0.0) = 1.5


class GridDiskSpec(_Spec):
    """The `Z**2` disk of radius `radius` with its outside contracted to a sink."""

    radius: conint(ge=2) = 30


class StopCondition(_Spec):
    """When a simulated walk stops.

    The step `budget` is always required as a backstop. `targets` stops
    at the first visit to any listed vertex, `layer` at the first visit to
    a vertex whose layer label is at least `layer`.
    """

    budget: PositiveInt
    targets: Optional[List[NonNegativeInt]] = None
    layer: Optional[NonNegativeInt] = None

    @validator("targets")
    def _nonempty_targets(cls, value):
        if value is not None and not value:
            raise ValueError("targets must list at least one vertex")
        return value

    @classmethod
    def parse(cls, text: str, budget: int) -> "StopCondition":
        """Read `vertex:V[,V...]`, `layer:L` or `budget`."""
        kind, _, argument = text.partition(":")
        kind = kind.strip().lower()
        if kind == "vertex":
            return cls(budget=budget, targets=[int(v) for v in argument.split(",") if v.strip()])
        if kind == "layer":
            return cls(budget=budget, layer=int(argument))
        if kind == "budget" and not argument:
            return cls(budget=budget)
        raise ValueError(f"unknown stop condition '{text}' (use vertex:V, layer:L or budget)")
