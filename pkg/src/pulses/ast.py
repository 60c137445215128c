"""Syntax tree of pulse programs: angle expressions and pulse events."""

import math
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

SYMBOLS = ("pi", "n", "J")
AXES = ("x", "y", "z")


class _Node(BaseModel):
    model_config = ConfigDict(frozen=True)


class Number(_Node):
    """Non-negative numeric literal; negative values are written with Negate."""

    kind: Literal["number"] = "number"
    value: float

    @field_validator("value")
    @classmethod
    def _check_value(cls, value: float) -> float:
        if not math.isfinite(value) or value < 0:
            raise ValueError(f"literal must be finite and non-negative, got {value}")
        return value + 0.0


class Symbol(_Node):
    """The constant pi or one of the bindable parameters n and J."""

    kind: Literal["symbol"] = "symbol"
    name: Literal["pi", "n", "J"]


class Negate(_Node):
    """Unary minus."""

    kind: Literal["negate"] = "negate"
    operand: "Expr"


class BinaryOp(_Node):
    """Left-associative arithmetic on two subexpressions."""

    kind: Literal["binary"] = "binary"
    op: Literal["+", "-", "*", "/"]
    left: "Expr"
    right: "Expr"


Expr = Annotated[Union[Number, Symbol, Negate, BinaryOp], Field(discriminator="kind")]

Negate.model_rebuild()
BinaryOp.model_rebuild()


class RfPulse(_Node):
    """Hard RF rotation R_axis^targets(angle), angle in radians."""

    kind: Literal["rf"] = "rf"
    axis: Literal["x", "y", "z"]
    targets: tuple[int, ...]
    angle: Expr

    @field_validator("targets")
    @classmethod
    def _check_targets(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        targets = tuple(sorted(set(value)))
        if not targets or not set(targets) <= {1, 2}:
            raise ValueError(f"targets must be a non-empty subset of {{1, 2}}, got {value}")
        return targets


class GradientCrush(_Node):
    """Pulsed field gradient along z; removes all coherences."""

    kind: Literal["crush"] = "crush"


class Delay(_Node):
    """Free evolution for `duration` seconds."""

    kind: Literal["delay"] = "delay"
    duration: Expr


class Tau(_Node):
    """Free evolution for 1/(2J) seconds."""

    kind: Literal["tau"] = "tau"


PulseEvent = Annotated[Union[RfPulse, GradientCrush, Delay, Tau], Field(discriminator="kind")]


class PulseSequence(_Node):
    """Events applied strictly one after another, left to right."""

    events: tuple[PulseEvent, ...] = ()
    name: Optional[str] = None

    def __len__(self) -> int:
        return len(self.events)


def substitute(expr: Expr, name: str, value: float) -> Expr:
    """Replace every occurrence of a symbol with a literal (negative values become Negate)."""
    if isinstance(expr, Symbol):
        if expr.name != name:
            return expr
        return Number(value=value) if value >= 0 else Negate(operand=Number(value=-value))
    if isinstance(expr, Negate):
        return Negate(operand=substitute(expr.operand, name, value))
    if isinstance(expr, BinaryOp):
        return BinaryOp(
            op=expr.op,
            left=substitute(expr.left, name, value),
            right=substitute(expr.right, name, value),
        )
    return expr


def bind_parameter(seq: PulseSequence, name: str, value: float) -> PulseSequence:
    """Fix a parameter of a sequence to a number, leaving the other symbols free."""
    events = []
    for event in seq.events:
        if isinstance(event, RfPulse):
            event = event.model_copy(update={"angle": substitute(event.angle, name, value)})
        elif isinstance(event, Delay):
            event = event.model_copy(update={"duration": substitute(event.duration, name, value)})
        events.append(event)
    return PulseSequence(events=tuple(events), name=seq.name)
