from typing import Dict, Optional, Union

from pydantic import BaseModel, Extra, NonNegativeFloat, StrictInt, root_validator


class BoundReport(BaseModel):
    """A computed quantity checked against a proved bound.

    `satisfied` is recomputed on every validation. By default it equals
    `value <= bound + half_width`. A `conservative` report charges the
    half-width to the value instead (`value + half_width <= bound`) and a
    `strict` one replaces `<=` with `<`.
    """

    quantity: str
    value: float
    bound: float
    half_width: Optional[NonNegativeFloat] = None  # 3 sigma, empirical values only
    conservative: bool = False
    strict: bool = False
    satisfied: bool = False
    parameters: Dict[str, Union[StrictInt, float, str]] = {}

    class Config:
        validate_assignment = True
        extra = Extra.forbid

    @root_validator(skip_on_failure=True)
    def _check_satisfied(cls, values):
        margin = values.get("half_width") or 0.0
        if values.get("conservative"):
            value, bound = values["value"] + margin, values["bound"]
        else:
            value, bound = values["value"], values["bound"] + margin
        values["satisfied"] = bool(value < bound if values.get("strict") else value <= bound)
        return values

    @property
    def empirical(self) -> bool:
        return self.half_width is not None

    def as_row(self) -> dict:
        """Flatten into one CSV row, parameters prefixed with `param_`."""
        row = {
            "quantity": self.quantity,
            "value": self.value,
            "half_width": self.half_width if self.half_width is not None else float("nan"),
            "bound": self.bound,
            "satisfied": self.satisfied,
        }
        row.update({f"param_{key}": value for key, value in self.parameters.items()})
        return row
