"""Exact evolution of classical and quantum continuous-time walks."""

import logging
from typing import Sequence

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, field_validator

from .graph import GeneratorMatrix, InvalidArgumentError, _frozen, pauli_string

logger = logging.getLogger(__name__)

# Probabilities down to this much below zero are float noise and get clamped.
NEGATIVE_TOLERANCE = 1e-12


class ProbabilityDistribution(BaseModel):
    """Occupation probabilities of the N nodes."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    probs: np.ndarray

    @field_validator("probs", mode="before")
    @classmethod
    def _check_probs(cls, value: object) -> np.ndarray:
        probs = np.asarray(value, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise InvalidArgumentError(f"Distribution must be a non-empty vector, got shape {probs.shape}")
        if not np.isfinite(probs).all():
            raise InvalidArgumentError("Distribution entries must be finite")
        if probs.min() < -NEGATIVE_TOLERANCE:
            raise InvalidArgumentError(f"Negative probability {probs.min():.3e}")
        # Also turns -0.0 into 0.0
        probs = np.maximum(probs, 0.0) + 0.0
        if abs(probs.sum() - 1.0) > 1e-9:
            raise InvalidArgumentError(f"Probabilities sum to {probs.sum():.12f}, not 1")
        return _frozen(probs)

    def __len__(self) -> int:
        return int(self.probs.size)

    def __getitem__(self, k: int) -> float:
        return float(self.probs[k])


class StateVector(BaseModel):
    """Normalized complex amplitudes over the node basis |0>, ..., |N-1>."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    amps: np.ndarray

    @field_validator("amps", mode="before")
    @classmethod
    def _check_amps(cls, value: object) -> np.ndarray:
        amps = np.asarray(value, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise InvalidArgumentError(f"State must be a non-empty vector, got shape {amps.shape}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > 1e-10:
            raise InvalidArgumentError(f"State has squared norm {norm:.12f}, not 1")
        return _frozen(amps)

    def __len__(self) -> int:
        return int(self.amps.size)


class UnitaryMatrix(BaseModel):
    """N x N unitary evolution operator."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _check_unitary(cls, value: object) -> np.ndarray:
        u = np.asarray(value, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise InvalidArgumentError(f"Unitary must be square, got shape {u.shape}")
        deviation = np.abs(u @ u.conj().T - np.eye(u.shape[0])).max()
        if deviation > 1e-10:
            raise InvalidArgumentError(f"Matrix is not unitary (max |UU^+ - I| = {deviation:.3e})")
        return _frozen(u)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def apply(self, psi: StateVector) -> StateVector:
        """Return U|psi>."""
        _check_dims(self.dim, len(psi))
        return StateVector(amps=self.matrix @ psi.amps)


def basis_state(k: int, n: int) -> StateVector:
    """The node state |k> in an n-node walk."""
    if not 0 <= k < n:
        raise InvalidArgumentError(f"Node {k} out of range for {n} nodes")
    amps = np.zeros(n, dtype=complex)
    amps[k] = 1.0
    return StateVector(amps=amps)


def point_distribution(k: int, n: int) -> ProbabilityDistribution:
    """All probability on node k."""
    if not 0 <= k < n:
        raise InvalidArgumentError(f"Node {k} out of range for {n} nodes")
    probs = np.zeros(n)
    probs[k] = 1.0
    return ProbabilityDistribution(probs=probs)


def uniform_distribution(n: int) -> ProbabilityDistribution:
    """Equal probability 1/n on every node."""
    return ProbabilityDistribution(probs=np.full(n, 1.0 / n))


def _check_time(t: float) -> None:
    if not np.isfinite(t) or t < 0:
        raise InvalidArgumentError(f"Time must be finite and non-negative, got {t}")


def _check_rate(gamma: float) -> None:
    if not np.isfinite(gamma) or gamma <= 0:
        raise InvalidArgumentError(f"Jumping rate must be positive, got {gamma}")


def _check_dims(expected: int, actual: int) -> None:
    if expected != actual:
        raise InvalidArgumentError(f"Dimension mismatch: operator is {expected}, vector is {actual}")


# === Exact evolution ===


def classical_evolve(h: GeneratorMatrix, p0: ProbabilityDistribution, t: float) -> ProbabilityDistribution:
    """Solve dP/dt = -H P exactly: P(t) = exp(-Ht) P(0).

    Args:
        h: Generator matrix
        p0: Initial distribution
        t: Elapsed time, non-negative

    Returns:
        Distribution at time t
    """
    _check_time(t)
    _check_dims(h.dim, len(p0))
    evals, evecs = h.eigensystem()
    p = evecs @ (np.exp(-evals * t) * (evecs.T @ p0.probs))
    return ProbabilityDistribution(probs=p)


def quantum_evolve(h: GeneratorMatrix, psi0: StateVector, t: float) -> StateVector:
    """Solve the Schrodinger equation with H as Hamiltonian: psi(t) = exp(-iHt) psi(0)."""
    _check_time(t)
    _check_dims(h.dim, len(psi0))
    evals, evecs = h.eigensystem()
    amps = evecs @ (np.exp(-1j * evals * t) * (evecs.T @ psi0.amps))
    return StateVector(amps=amps)


def evolution_unitary(h: GeneratorMatrix, t: float) -> UnitaryMatrix:
    """exp(-iHt) assembled from the eigendecomposition of H."""
    _check_time(t)
    evals, evecs = h.eigensystem()
    return UnitaryMatrix(matrix=(evecs * np.exp(-1j * evals * t)) @ evecs.T)


def dense_unitary(h: GeneratorMatrix, t: float) -> UnitaryMatrix:
    """exp(-iHt) by scaling and squaring (scipy); an oracle independent of evolution_unitary."""
    _check_time(t)
    return UnitaryMatrix(matrix=scipy.linalg.expm(-1j * t * h.matrix))


def measurement_probabilities(psi: StateVector) -> ProbabilityDistribution:
    """Node occupation probabilities |<k|psi>|^2."""
    probs = np.abs(psi.amps) ** 2
    return ProbabilityDistribution(probs=probs / probs.sum())


def integrate_master_equation(
    h: GeneratorMatrix,
    p0: ProbabilityDistribution,
    times: Sequence[float],
    step: float = 1e-4,
) -> list[np.ndarray]:
    """Integrate dP/dt = -H P with classical fourth-order Runge-Kutta.

    The integrator lands exactly on every requested time, shortening the
    step that would overshoot it.

    Args:
        h: Generator matrix
        p0: Initial distribution
        times: Non-decreasing, non-negative output times
        step: Maximum step size

    Returns:
        Raw probability vectors, one per requested time
    """
    if step <= 0:
        raise InvalidArgumentError(f"Step must be positive, got {step}")
    _check_dims(h.dim, len(p0))
    rate = -h.matrix
    p = p0.probs.astype(float).copy()
    now = 0.0
    out: list[np.ndarray] = []
    for target in times:
        _check_time(target)
        if target < now:
            raise InvalidArgumentError("Output times must be non-decreasing")
        while now < target:
            dt = min(step, target - now)
            k1 = rate @ p
            k2 = rate @ (p + 0.5 * dt * k1)
            k3 = rate @ (p + 0.5 * dt * k2)
            k4 = rate @ (p + dt * k3)
            p = p + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            now = target if dt == target - now else now + dt
        out.append(p.copy())
    logger.debug("RK4 integrated %d output times with step %g", len(out), step)
    return out


# === Four-node circle closed forms ===


def classical_closed_form_cycle4(gamma: float, t: float) -> ProbabilityDistribution:
    """Classical occupation probabilities on the four-node circle, walker starting at node 0."""
    _check_rate(gamma)
    _check_time(t)
    slow, fast = np.exp(-2 * gamma * t), np.exp(-4 * gamma * t)
    p0 = 0.25 + slow / 2 + fast / 4
    p1 = 0.25 - fast / 4
    p2 = 0.25 - slow / 2 + fast / 4
    return ProbabilityDistribution(probs=[p0, p1, p2, p1])


def quantum_closed_form_cycle4(gamma: float, t: float) -> StateVector:
    """Quantum state on the four-node circle from |0>, global phase exp(-2i gamma t) included."""
    _check_rate(gamma)
    _check_time(t)
    x = gamma * t
    phase = np.exp(-2j * x)
    side = 0.5j * np.sin(2 * x)
    amps = phase * np.array([np.cos(x) ** 2, side, -np.sin(x) ** 2, side])
    return StateVector(amps=amps)


def factored_unitary_cycle4(gamma: float, t: float) -> UnitaryMatrix:
    """exp(-iHt) for the four-node circle as exp(-2i gamma t) exp(i gamma t XX) exp(i gamma t IX).

    Both exponents square to the identity, so each factor is cos + i sin times
    its Pauli string.
    """
    _check_rate(gamma)
    _check_time(t)
    coupling, hop = cycle4_factors(gamma, t)
    return UnitaryMatrix(matrix=np.exp(-2j * gamma * t) * (coupling @ hop))


def cycle4_factors(gamma: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    """The two commuting factors exp(i gamma t XX) and exp(i gamma t IX), in that order."""
    x = gamma * t
    identity = np.eye(4, dtype=complex)
    coupling = np.cos(x) * identity + 1j * np.sin(x) * pauli_string("X", "X")
    hop = np.cos(x) * identity + 1j * np.sin(x) * pauli_string("I", "X")
    return coupling, hop
