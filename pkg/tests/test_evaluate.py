import math

import pytest

from src.pulses.ast import BinaryOp, Number, PulseSequence, RfPulse, Symbol, bind_parameter
from src.pulses.evaluate import Bindings, Crush, EvaluationError, Rotation, Wait, evaluate, evaluate_expr
from src.pulses.parser import parse
from src.spin.experiment import PREPARATION_SEQUENCE, WALK_SEQUENCE


def test_parametric_angle():
    (rotation,) = evaluate(parse("Rx2(n*pi/6)"), Bindings(n=5)).events
    assert isinstance(rotation, Rotation)
    assert (rotation.axis, rotation.targets) == ("x", (2,))
    assert rotation.angle == pytest.approx(5 * math.pi / 6)


def test_tau_is_half_inverse_coupling():
    (wait,) = evaluate(parse("tau"), Bindings(J=215.0)).events
    assert isinstance(wait, Wait)
    assert wait.duration == pytest.approx(2.3256e-3, rel=1e-4)
    assert wait.duration == 1 / 430


def test_echo_halves():
    concrete = evaluate(parse("d(n/(12*J)) - Rx12(pi) - d(n/(12*J))"), Bindings(n=6, J=215.0))
    first, pulse, second = concrete.events
    assert first.duration == pytest.approx(6 / 2580)
    assert second.duration == pytest.approx(6 / 2580)
    assert pulse.targets == (1, 2)
    assert pulse.angle == pytest.approx(math.pi)
    assert concrete.total_delay == pytest.approx(12 / 2580)


def test_preparation_matches_hand_built_evaluation():
    concrete = evaluate(parse(PREPARATION_SEQUENCE), Bindings())
    assert concrete.events == (
        Rotation(axis="x", targets=(1,), angle=math.pi / 3),
        Crush(),
        Rotation(axis="x", targets=(1,), angle=math.pi / 4),
        Wait(duration=1 / 430),
        Rotation(axis="y", targets=(1,), angle=-math.pi / 4),
        Crush(),
    )


def test_walk_sequence_angles():
    concrete = evaluate(parse(WALK_SEQUENCE), Bindings(n=3, J=215.0))
    assert concrete.events[0].angle == pytest.approx(-math.pi / 2)
    assert concrete.total_delay == pytest.approx(3 / (6 * 215.0))


def test_unbound_parameter():
    with pytest.raises(EvaluationError, match="'n'"):
        evaluate(parse("Rx1(n*pi)"), Bindings())


def test_unused_parameter_may_stay_unbound():
    assert len(evaluate(parse("Rx1(pi) - Gz"), Bindings())) == 2


def test_division_by_zero():
    with pytest.raises(EvaluationError, match="Division by zero"):
        evaluate(parse("d(1/(n-n))"), Bindings(n=3))


def test_non_finite_result():
    huge = BinaryOp(op="*", left=Number(value=1e200), right=Number(value=1e200))
    with pytest.raises(EvaluationError):
        evaluate_expr(huge, Bindings())


@pytest.mark.parametrize("j", [0.0, -215.0, math.inf])
def test_coupling_must_be_positive(j):
    with pytest.raises(EvaluationError):
        evaluate(parse("tau"), Bindings(J=j))


def test_bind_parameter_keeps_other_symbols():
    seq = bind_parameter(parse("Rx2(n*pi/6) - d(n/J)"), "n", 4)
    assert seq.events[0].angle.left.left == Number(value=4)
    assert seq.events[1].duration.right == Symbol(name="J")
    concrete = evaluate(seq, Bindings(J=2.0))
    assert concrete.events[1].duration == 2.0


def test_bind_negative_value():
    seq = bind_parameter(PulseSequence(events=(RfPulse(axis="x", targets=(1,), angle=Symbol(name="n")),)), "n", -2)
    assert evaluate(seq, Bindings()).events[0].angle == -2.0


@pytest.mark.parametrize("text, n", [("d(-1)", 0), ("d(n/(12*J))", -1), ("d(1e-3 - 2e-3)", 0)])
def test_negative_delay_rejected(text, n):
    with pytest.raises(EvaluationError, match="non-negative"):
        evaluate(parse(text), Bindings(n=n))


def test_zero_delay_allowed():
    assert evaluate(parse("d(-0)"), Bindings()).events[0].duration == 0.0
