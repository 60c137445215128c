import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.walk.evolution import (
    ProbabilityDistribution,
    StateVector,
    UnitaryMatrix,
    basis_state,
    classical_closed_form_cycle4,
    classical_evolve,
    cycle4_factors,
    dense_unitary,
    evolution_unitary,
    factored_unitary_cycle4,
    integrate_master_equation,
    measurement_probabilities,
    point_distribution,
    quantum_closed_form_cycle4,
    quantum_evolve,
    uniform_distribution,
)
from src.walk.graph import (
    InvalidArgumentError,
    complete_graph,
    cycle_generator,
    cycle_graph,
    graph_generator,
    hypercube_graph,
    path_graph,
)

gammas = st.floats(min_value=0.1, max_value=3.0)
times = st.floats(min_value=0.0, max_value=5.0)


def test_classical_starts_at_initial_distribution(h4):
    p = classical_evolve(h4, point_distribution(0, 4), 0.0)
    np.testing.assert_allclose(p.probs, [1, 0, 0, 0], atol=1e-12)


def test_classical_relaxes_to_uniform(h4):
    p = classical_evolve(h4, point_distribution(0, 4), 20.0)
    np.testing.assert_allclose(p.probs, 0.25, atol=1e-12)


@given(gammas, times)
def test_classical_matches_closed_form(gamma, t):
    p = classical_evolve(cycle_generator(4, gamma), point_distribution(0, 4), t)
    np.testing.assert_allclose(p.probs, classical_closed_form_cycle4(gamma, t).probs, atol=1e-12)


@given(gammas, times)
def test_quantum_matches_closed_form_including_phase(gamma, t):
    psi = quantum_evolve(cycle_generator(4, gamma), basis_state(0, 4), t)
    np.testing.assert_allclose(psi.amps, quantum_closed_form_cycle4(gamma, t).amps, atol=1e-12)


@given(times, times)
def test_quantum_semigroup(s, t):
    h = cycle_generator(5, 1.0)
    psi = basis_state(0, 5)
    twice = quantum_evolve(h, quantum_evolve(h, psi, s), t)
    np.testing.assert_allclose(twice.amps, quantum_evolve(h, psi, s + t).amps, atol=1e-11)


@given(gammas, times)
@settings(max_examples=50)
def test_factored_unitary_equals_dense_exponential(gamma, t):
    factored = factored_unitary_cycle4(gamma, t).matrix
    np.testing.assert_allclose(factored, dense_unitary(cycle_generator(4, gamma), t).matrix, atol=1e-10)
    np.testing.assert_allclose(factored, evolution_unitary(cycle_generator(4, gamma), t).matrix, atol=1e-12)


def test_cycle4_factors_commute():
    coupling, hop = cycle4_factors(1.0, 0.3)
    np.testing.assert_allclose(coupling @ hop, hop @ coupling, atol=1e-15)


def test_quantum_walk_on_hypercube_stays_normalized():
    h = graph_generator(hypercube_graph(3, 0.5))
    psi = quantum_evolve(h, basis_state(0, 8), 2.0)
    assert np.vdot(psi.amps, psi.amps).real == pytest.approx(1.0, abs=1e-12)
    assert measurement_probabilities(psi)[7] > 0


@pytest.mark.parametrize("x, expected", [
    (np.pi / 4, [0.25, 0.25, 0.25, 0.25]),
    (np.pi / 2, [0.0, 0.0, 1.0, 0.0]),
    (np.pi, [1.0, 0.0, 0.0, 0.0]),
])
def test_quantum_landmarks(h4, psi0, x, expected):
    probs = measurement_probabilities(quantum_evolve(h4, psi0, x)).probs
    np.testing.assert_allclose(probs, expected, atol=1e-12)


def test_integrator_matches_closed_form(h4):
    times = [0.0, 0.25, 0.5, 1.0, 2.0]
    integrated = integrate_master_equation(h4, point_distribution(0, 4), times, step=1e-3)
    for p, t in zip(integrated, times):
        np.testing.assert_allclose(p, classical_closed_form_cycle4(1.0, t).probs, atol=1e-8)


def test_integrator_rejects_decreasing_times(h4):
    with pytest.raises(InvalidArgumentError):
        integrate_master_equation(h4, point_distribution(0, 4), [1.0, 0.5])


def test_integrator_rejects_bad_step(h4):
    with pytest.raises(InvalidArgumentError):
        integrate_master_equation(h4, point_distribution(0, 4), [1.0], step=0.0)


def test_negative_time_rejected(h4, psi0):
    with pytest.raises(InvalidArgumentError):
        quantum_evolve(h4, psi0, -1.0)


def test_dimension_mismatch_rejected(h4):
    with pytest.raises(InvalidArgumentError):
        classical_evolve(h4, point_distribution(0, 5), 1.0)


@pytest.mark.parametrize("probs", [[0.5, 0.4], [1.1, -0.1], [np.nan, 1.0], []])
def test_distribution_validation(probs):
    with pytest.raises(InvalidArgumentError):
        ProbabilityDistribution(probs=probs)


def test_distribution_clamps_rounding_noise():
    p = ProbabilityDistribution(probs=[1.0, -1e-15, 0.0])
    assert p[1] == 0.0
    assert len(p) == 3


def test_state_must_be_normalized():
    with pytest.raises(InvalidArgumentError):
        StateVector(amps=[1.0, 1.0])


def test_unitary_validation():
    with pytest.raises(InvalidArgumentError):
        UnitaryMatrix(matrix=[[1.0, 1.0], [0.0, 1.0]])
    u = UnitaryMatrix(matrix=[[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(u.apply(basis_state(0, 2)).amps, [0, 1])


def test_uniform_distribution():
    np.testing.assert_allclose(uniform_distribution(4).probs, 0.25)


@pytest.mark.parametrize("k, n", [(4, 4), (-1, 4)])
def test_basis_state_range(k, n):
    with pytest.raises(InvalidArgumentError):
        basis_state(k, n)


@given(times, times)
def test_classical_semigroup(s, t):
    h = cycle_generator(5, 1.0)
    p = point_distribution(0, 5)
    twice = classical_evolve(h, classical_evolve(h, p, s), t)
    np.testing.assert_allclose(twice.probs, classical_evolve(h, p, s + t).probs, atol=1e-12)


@given(gammas, times)
def test_mirror_nodes_stay_equal(gamma, t):
    h = cycle_generator(4, gamma)
    classical = classical_evolve(h, point_distribution(0, 4), t)
    quantum = measurement_probabilities(quantum_evolve(h, basis_state(0, 4), t))
    assert classical[1] == pytest.approx(classical[3], abs=1e-12)
    assert quantum[1] == pytest.approx(quantum[3], abs=1e-12)


@pytest.mark.parametrize("graph", [
    cycle_graph(4, 1.0),
    cycle_graph(5, 0.7),
    complete_graph(4, 1.3),
    path_graph(5, 1.0),
    hypercube_graph(3, 0.5),
], ids=["cycle4", "cycle5", "complete4", "path5", "cube3"])
def test_probability_conserved_on_grid(graph):
    h = graph_generator(graph)
    n = graph.num_nodes
    for t in np.linspace(0.0, 4 * np.pi / graph.jump_rate, 100):
        psi = quantum_evolve(h, basis_state(0, n), t)
        assert np.vdot(psi.amps, psi.amps).real == pytest.approx(1.0, abs=1e-12)
        p = classical_evolve(h, point_distribution(0, n), t)
        assert p.probs.sum() == pytest.approx(1.0, abs=1e-11)
