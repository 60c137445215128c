"""Reduce parametric pulse programs to concrete angles and durations."""

import logging
import math
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from ..errors import CtqwError
from .ast import BinaryOp, Delay, Expr, Negate, Number, PulseSequence, RfPulse, Symbol, Tau

logger = logging.getLogger(__name__)


class EvaluationError(CtqwError):
    """Raised when an expression cannot be reduced to a finite number."""
    pass


class Bindings(BaseModel):
    """Values of the free symbols: the integer n and the coupling J in Hz."""

    model_config = ConfigDict(frozen=True)

    n: Optional[int] = Field(default=None, description="Experiment index")
    J: float = Field(default=215.0, description="Scalar coupling in Hz")


class Rotation(BaseModel):
    """RF rotation with a numeric angle in radians."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["rotation"] = "rotation"
    axis: Literal["x", "y", "z"]
    targets: tuple[int, ...]
    angle: float


class Wait(BaseModel):
    """Free evolution of a numeric duration in seconds."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["wait"] = "wait"
    duration: float


class Crush(BaseModel):
    """Gradient crush."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["crush"] = "crush"


ConcreteEvent = Annotated[Union[Rotation, Wait, Crush], Field(discriminator="kind")]


class ConcreteSequence(BaseModel):
    """A pulse program with every expression evaluated."""

    model_config = ConfigDict(frozen=True)

    events: tuple[ConcreteEvent, ...] = ()
    name: Optional[str] = None

    def __len__(self) -> int:
        return len(self.events)

    @property
    def total_delay(self) -> float:
        """Summed free-evolution time in seconds."""
        return sum(e.duration for e in self.events if isinstance(e, Wait))


def evaluate_expr(expr: Expr, bindings: Bindings) -> float:
    """Numeric value of an expression.

    Raises:
        EvaluationError: On an unbound n, division by zero or a non-finite result
    """
    if isinstance(expr, Number):
        value = expr.value
    elif isinstance(expr, Symbol):
        if expr.name == "pi":
            value = math.pi
        elif expr.name == "J":
            value = bindings.J
        elif bindings.n is None:
            raise EvaluationError("Parameter 'n' is used but not bound")
        else:
            value = float(bindings.n)
    elif isinstance(expr, Negate):
        value = -evaluate_expr(expr.operand, bindings)
    else:
        left = evaluate_expr(expr.left, bindings)
        right = evaluate_expr(expr.right, bindings)
        if expr.op == "+":
            value = left + right
        elif expr.op == "-":
            value = left - right
        elif expr.op == "*":
            value = left * right
        elif right == 0:
            raise EvaluationError("Division by zero")
        else:
            value = left / right
    if not math.isfinite(value):
        raise EvaluationError(f"Expression evaluates to a non-finite value ({value})")
    return value


def evaluate(seq: PulseSequence, bindings: Bindings) -> ConcreteSequence:
    """Bind n and J and reduce every angle and duration; tau becomes 1/(2J) seconds.

    Args:
        seq: Parametric sequence
        bindings: Values for n and J

    Returns:
        ConcreteSequence with the same event order

    Raises:
        EvaluationError: On a non-positive J, a failing expression or a negative delay
    """
    if not math.isfinite(bindings.J) or bindings.J <= 0:
        raise EvaluationError(f"J must be positive, got {bindings.J}")
    events: list[Union[Rotation, Wait, Crush]] = []
    for event in seq.events:
        if isinstance(event, RfPulse):
            events.append(Rotation(axis=event.axis, targets=event.targets, angle=evaluate_expr(event.angle, bindings)))
        elif isinstance(event, Delay):
            duration = evaluate_expr(event.duration, bindings)
            if duration < 0:
                raise EvaluationError(f"Delay duration must be non-negative, got {duration}")
            events.append(Wait(duration=duration))
        elif isinstance(event, Tau):
            events.append(Wait(duration=1.0 / (2.0 * bindings.J)))
        else:
            events.append(Crush())
    logger.debug("Evaluated %d events with n=%s, J=%g Hz", len(events), bindings.n, bindings.J)
    return ConcreteSequence(events=tuple(events), name=seq.name)
