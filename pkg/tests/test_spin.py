import numpy as np
import pytest

from src.pulses.evaluate import Bindings, evaluate
from src.pulses.parser import parse
from src.spin.simulator import (
    NonUnitarySequenceError,
    apply_delay,
    apply_gradient_crush,
    apply_rf,
    delay_unitary,
    rf_unitary,
    run_sequence,
    sequence_unitary,
)
from src.spin.system import DeviationMatrix, NoiseModel, SpinSystem
from src.walk.graph import InvalidArgumentError, pauli_string


def _deviation(*labels):
    return DeviationMatrix(entries=pauli_string(*labels))


@pytest.mark.parametrize("targets", [(1,), (2,), (1, 2)])
@pytest.mark.parametrize("axis", ["x", "y", "z"])
def test_rf_unitary_is_unitary(targets, axis):
    u = rf_unitary(targets, axis, 0.9)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(4), atol=1e-14)


def test_rf_pi_pulse_flips_spin_one():
    rho = DeviationMatrix(entries=np.diag([1.5, -0.5, -0.5, -0.5]))
    flipped = apply_rf(rho, (1,), "x", np.pi)
    np.testing.assert_allclose(flipped.diagonal, [-0.5, -0.5, 1.5, -0.5], atol=1e-14)


def test_rf_rejects_bad_targets():
    with pytest.raises(InvalidArgumentError):
        rf_unitary((3,), "x", 1.0)
    with pytest.raises(InvalidArgumentError):
        rf_unitary((), "x", 1.0)


def test_delay_rejects_negative_duration():
    with pytest.raises(InvalidArgumentError):
        delay_unitary(-1e-3, SpinSystem())


def test_in_phase_becomes_anti_phase(system, quiet):
    # Coupling phase pi J t = pi/2 turns Y(x)I into +-X(x)Z
    after = apply_delay(_deviation("Y", "I"), system.tau, system, quiet).entries
    target = pauli_string("X", "Z")
    assert min(np.abs(after - target).max(), np.abs(after + target).max()) < 1e-12


def test_delay_leaves_populations_alone():
    system = SpinSystem(offset_1=100.0, offset_2=-40.0)
    rho = DeviationMatrix(entries=np.diag([1.5, -0.5, -0.5, -0.5]))
    after = apply_delay(rho, 1e-3, system, NoiseModel(enabled=True))
    np.testing.assert_allclose(after.entries, rho.entries, atol=1e-14)


def test_offset_echo_refocuses(system, quiet):
    # d - pi - d removes the offset phase on spin 1 but keeps the coupling
    detuned = SpinSystem(offset_1=37.0)
    seq = evaluate(parse("d(1e-3) - Rx12(pi) - d(1e-3) - Rx12(-pi)"), Bindings())
    np.testing.assert_allclose(
        np.abs(sequence_unitary(seq, detuned).matrix),
        np.abs(sequence_unitary(seq, system).matrix),
        atol=1e-12,
    )
    rho = _deviation("X", "I")
    np.testing.assert_allclose(
        run_sequence(rho, seq, detuned, quiet).entries,
        run_sequence(rho, seq, system, quiet).entries,
        atol=1e-12,
    )


def test_gradient_crush_keeps_only_diagonal():
    rho = DeviationMatrix.from_matrix(pauli_string("X", "I") + pauli_string("Z", "Z"))
    crushed = apply_gradient_crush(rho)
    assert crushed.max_coherence == 0.0
    np.testing.assert_allclose(crushed.diagonal, [1, -1, -1, 1])


def test_dephasing_factors(system):
    t = 0.05
    factors = NoiseModel(enabled=True).dephasing_factors(t, system)
    np.testing.assert_allclose(np.diag(factors), 1.0)
    assert factors[0, 1] == pytest.approx(np.exp(-t / system.t2_spin2))
    assert factors[0, 2] == pytest.approx(np.exp(-t / system.t2_spin1))
    assert factors[0, 3] == pytest.approx(np.exp(-t * (1 / system.t2_spin1 + 1 / system.t2_spin2)))
    np.testing.assert_array_equal(NoiseModel().dephasing_factors(t, system), np.ones((4, 4)))


def test_noise_never_grows_coherences(system, noisy, rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    a = a + a.conj().T
    rho = DeviationMatrix.from_matrix(a - np.trace(a) / 4 * np.eye(4))
    after = apply_delay(rho, 0.1, system, noisy)
    assert (np.abs(after.entries) <= np.abs(rho.entries) + 1e-12).all()
    np.testing.assert_allclose(after.diagonal, rho.diagonal, atol=1e-12)
    assert after.max_coherence < rho.max_coherence


def test_deviation_matrix_validation():
    with pytest.raises(InvalidArgumentError):
        DeviationMatrix(entries=np.eye(4))
    with pytest.raises(InvalidArgumentError):
        DeviationMatrix(entries=np.triu(np.ones((4, 4)), 1))
    with pytest.raises(InvalidArgumentError):
        DeviationMatrix(entries=np.zeros((2, 2)))


@pytest.mark.parametrize("field", ["j_coupling", "t2_spin1", "t2_spin2"])
def test_spin_system_constants_positive(field):
    with pytest.raises(InvalidArgumentError):
        SpinSystem(**{field: 0.0})


def test_tau():
    assert SpinSystem().tau == 1 / 430


def test_sequence_unitary_rejects_crush(system):
    seq = evaluate(parse("Rx1(pi) - Gz"), Bindings())
    with pytest.raises(NonUnitarySequenceError):
        sequence_unitary(seq, system)


def test_sequence_unitary_orders_events(system):
    seq = evaluate(parse("Rx1(pi/2) - Ry2(pi/3)"), Bindings())
    expected = rf_unitary((2,), "y", np.pi / 3) @ rf_unitary((1,), "x", np.pi / 2)
    np.testing.assert_allclose(sequence_unitary(seq, system).matrix, expected, atol=1e-15)


def test_run_sequence_matches_unitary_conjugation(system, quiet):
    seq = evaluate(parse("Rx1(pi/3) - d(1e-3) - Ry12(-pi/5) - tau"), Bindings())
    rho = _deviation("Z", "I")
    u = sequence_unitary(seq, system).matrix
    expected = u @ rho.entries @ u.conj().T
    np.testing.assert_allclose(run_sequence(rho, seq, system, quiet).entries, expected, atol=1e-13)


def _random_deviation(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    a = a + a.conj().T
    return DeviationMatrix.from_matrix(a - np.trace(a) / 4 * np.eye(4))


def test_gradient_crush_is_idempotent(rng):
    for _ in range(10):
        once = apply_gradient_crush(_random_deviation(rng))
        np.testing.assert_array_equal(apply_gradient_crush(once).entries, once.entries)


@pytest.mark.parametrize("t", [1e-3, 0.05, 1.0])
def test_gradient_crush_commutes_with_dephasing(system, noisy, rng, t):
    factors = noisy.dephasing_factors(t, system)
    for _ in range(10):
        rho = _random_deviation(rng)
        dephased_then_crushed = apply_gradient_crush(DeviationMatrix.from_matrix(factors * rho.entries))
        crushed_then_dephased = factors * apply_gradient_crush(rho).entries
        np.testing.assert_allclose(dephased_then_crushed.entries, crushed_then_dephased, atol=1e-15)
        np.testing.assert_allclose(
            apply_gradient_crush(apply_delay(rho, t, system, noisy)).entries,
            apply_delay(apply_gradient_crush(rho), t, system, noisy).entries,
            atol=1e-12,
        )
