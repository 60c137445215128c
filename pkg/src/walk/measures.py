"""Distances to uniformity, entanglement entropy and per-time walk observables."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import entr

from ..errors import CtqwError
from .evolution import (
    GeneratorMatrix,
    ProbabilityDistribution,
    StateVector,
    basis_state,
    measurement_probabilities,
    quantum_evolve,
    uniform_distribution,
)
from .graph import InvalidArgumentError, cycle_generator


class UnsupportedDimensionError(CtqwError):
    """Raised when a state cannot be split into qubit subsystems."""
    pass


class WalkObservables(BaseModel):
    """Distance to uniform and entanglement of the quantum walk at one time."""

    model_config = ConfigDict(frozen=True)

    time: float = Field(ge=0, description="Time t")
    tvd_to_uniform: float = Field(ge=0, description="Total variation distance to the uniform distribution")
    entanglement: Optional[float] = Field(
        default=None,
        description="Entanglement entropy across the first qubit, absent when N is not a power of two",
    )


def total_variation_distance(p: ProbabilityDistribution, q: ProbabilityDistribution) -> float:
    """Half the L1 distance between two distributions.

    Raises:
        InvalidArgumentError: If the distributions have different lengths
    """
    if len(p) != len(q):
        raise InvalidArgumentError(f"Cannot compare distributions of lengths {len(p)} and {len(q)}")
    return float(0.5 * np.abs(p.probs - q.probs).sum())


def _qubit_count(dim: int) -> int:
    if dim < 2 or dim & (dim - 1):
        raise UnsupportedDimensionError(f"Dimension {dim} is not a power of two")
    return dim.bit_length() - 1


def entanglement_entropy(psi: StateVector, split: int = 1) -> float:
    """Von Neumann entropy (bits) of the first `split` qubits of a pure state.

    The eigenvalues of the reduced state are the squared Schmidt
    coefficients, read off the singular values of the amplitude matrix.
    Zero eigenvalues contribute nothing (0 log 0 = 0).

    Args:
        psi: Pure state on 2**q amplitudes
        split: Number of qubits in the first subsystem, 1 <= split < q

    Returns:
        Entropy in bits
    """
    qubits = _qubit_count(len(psi))
    if not 1 <= split < qubits:
        raise InvalidArgumentError(f"Split {split} must lie in [1, {qubits - 1}]")
    schmidt = np.linalg.svd(psi.amps.reshape(2**split, -1), compute_uv=False)
    weights = np.clip(schmidt**2, 0.0, 1.0)
    return float(entr(weights).sum() / np.log(2))


def walk_observables(h: GeneratorMatrix, psi0: StateVector, t: float) -> WalkObservables:
    """Observables of the quantum walk generated by h at time t."""
    psi = quantum_evolve(h, psi0, t)
    tvd = total_variation_distance(measurement_probabilities(psi), uniform_distribution(len(psi)))
    try:
        entropy: Optional[float] = entanglement_entropy(psi, 1)
    except UnsupportedDimensionError:
        entropy = None
    return WalkObservables(time=t, tvd_to_uniform=tvd, entanglement=entropy)


def observables_at(gamma: float, t: float) -> WalkObservables:
    """Observables of the four-node circle walk started at node 0."""
    return walk_observables(cycle_generator(4, gamma), basis_state(0, 4), t)


# === Closed forms on the four-node circle ===


def classical_tvd_closed_form_cycle4(gamma: float, t: float) -> float:
    """Classical distance to uniform: exp(-2 gamma t)/2 + exp(-4 gamma t)/4."""
    return float(0.5 * np.exp(-2 * gamma * t) + 0.25 * np.exp(-4 * gamma * t))


def quantum_tvd_closed_form_cycle4(gamma: float, t: float) -> float:
    """Quantum distance to uniform evaluated from cos^4, sin^2(2x)/4, sin^4 with x = gamma t."""
    x = gamma * t
    probs = np.array([np.cos(x) ** 4, np.sin(2 * x) ** 2 / 4, np.sin(x) ** 4, np.sin(2 * x) ** 2 / 4])
    return float(0.5 * np.abs(probs - 0.25).sum())


def entropy_closed_form(gamma: float, t: float) -> float:
    """Entanglement of the four-node walk state: binary entropy of cos^2(gamma t)."""
    c2 = np.cos(gamma * t) ** 2
    return float((entr(c2) + entr(1.0 - c2)) / np.log(2))


def fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """Global-phase-invariant overlap |tr(U^+ V)| / N of two unitaries."""
    u, v = np.asarray(u), np.asarray(v)
    if u.shape != v.shape:
        raise InvalidArgumentError(f"Shape mismatch: {u.shape} vs {v.shape}")
    return float(abs(np.trace(u.conj().T @ v)) / u.shape[0])
