"""A small language for two-spin pulse programs."""

from .ast import (
    BinaryOp,
    Delay,
    GradientCrush,
    Negate,
    Number,
    PulseSequence,
    RfPulse,
    Symbol,
    Tau,
    bind_parameter,
)
from .evaluate import (
    Bindings,
    ConcreteSequence,
    Crush,
    EvaluationError,
    Rotation,
    Wait,
    evaluate,
)
from .parser import PulseSyntaxError, parse, parse_file, render

__all__ = [
    "BinaryOp",
    "Bindings",
    "ConcreteSequence",
    "Crush",
    "Delay",
    "EvaluationError",
    "GradientCrush",
    "Negate",
    "Number",
    "PulseSequence",
    "PulseSyntaxError",
    "RfPulse",
    "Rotation",
    "Symbol",
    "Tau",
    "Wait",
    "bind_parameter",
    "evaluate",
    "parse",
    "parse_file",
    "render",
]
