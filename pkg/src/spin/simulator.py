"""Event semantics of the two-spin processor acting on deviation matrices."""

import logging
from typing import Iterable

import numpy as np

from ..errors import CtqwError
from ..pulses.evaluate import ConcreteSequence, Crush, Rotation, Wait
from ..walk.evolution import UnitaryMatrix
from ..walk.graph import InvalidArgumentError, pauli_matrix
from .system import SPIN1_BITS, SPIN2_BITS, DeviationMatrix, NoiseModel, SpinSystem

logger = logging.getLogger(__name__)


class NonUnitarySequenceError(CtqwError):
    """Raised when a unitary is requested for a sequence containing a gradient crush."""
    pass


def _spin_rotation(axis: str, angle: float) -> np.ndarray:
    """exp(-i angle/2 sigma_axis) on one spin."""
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * pauli_matrix(axis.upper())


def rf_unitary(targets: Iterable[int], axis: str, angle: float) -> np.ndarray:
    """Tensor product of the rotation on each targeted spin and the identity elsewhere."""
    targets = set(targets)
    if not targets or not targets <= {1, 2}:
        raise InvalidArgumentError(f"RF targets must be a non-empty subset of {{1, 2}}, got {sorted(targets)}")
    if axis not in ("x", "y", "z"):
        raise InvalidArgumentError(f"Unknown rotation axis {axis!r}")
    rotation = _spin_rotation(axis, angle)
    first = rotation if 1 in targets else np.eye(2)
    second = rotation if 2 in targets else np.eye(2)
    return np.kron(first, second)


def delay_unitary(duration: float, system: SpinSystem) -> np.ndarray:
    """Free evolution under (pi J/2) ZZ + pi o1 ZI + pi o2 IZ, diagonal in the node basis."""
    if duration < 0:
        raise InvalidArgumentError(f"Delay duration must be non-negative, got {duration}")
    z1 = 1 - 2 * SPIN1_BITS
    z2 = 1 - 2 * SPIN2_BITS
    energies = np.pi * (system.j_coupling / 2 * z1 * z2 + system.offset_1 * z1 + system.offset_2 * z2)
    return np.diag(np.exp(-1j * energies * duration))


def _conjugate(rho: DeviationMatrix, u: np.ndarray) -> DeviationMatrix:
    return DeviationMatrix.from_matrix(u @ rho.entries @ u.conj().T)


def apply_rf(rho: DeviationMatrix, targets: Iterable[int], axis: str, angle: float) -> DeviationMatrix:
    """Instantaneous RF pulse: rho -> U rho U^+.

    Args:
        rho: Current deviation matrix
        targets: Spins hit by the pulse, a subset of {1, 2}
        axis: "x", "y" or "z"
        angle: Rotation angle in radians

    Returns:
        Rotated deviation matrix
    """
    return _conjugate(rho, rf_unitary(targets, axis, angle))


def apply_delay(
    rho: DeviationMatrix,
    duration: float,
    system: SpinSystem,
    noise: NoiseModel,
) -> DeviationMatrix:
    """Coupling and offset evolution for `duration` seconds, then T2 dephasing if enabled.

    Raises:
        InvalidArgumentError: If duration is negative
    """
    u = delay_unitary(duration, system)
    evolved = u @ rho.entries @ u.conj().T
    return DeviationMatrix.from_matrix(evolved * noise.dephasing_factors(duration, system))


def apply_gradient_crush(rho: DeviationMatrix) -> DeviationMatrix:
    """Keep the diagonal, zero every coherence (heteronuclear pair)."""
    return DeviationMatrix(entries=np.diag(rho.entries.diagonal()))


def run_sequence(
    rho: DeviationMatrix,
    seq: ConcreteSequence,
    system: SpinSystem,
    noise: NoiseModel,
) -> DeviationMatrix:
    """Interpret a concrete sequence event by event, left to right."""
    for index, event in enumerate(seq.events):
        if isinstance(event, Rotation):
            rho = apply_rf(rho, event.targets, event.axis, event.angle)
        elif isinstance(event, Wait):
            rho = apply_delay(rho, event.duration, system, noise)
        else:
            rho = apply_gradient_crush(rho)
        logger.debug("event %d (%s): max coherence %.3e", index, event.kind, rho.max_coherence)
    return rho


def sequence_unitary(seq: ConcreteSequence, system: SpinSystem) -> UnitaryMatrix:
    """Ordered product of the event unitaries (noise off), last event leftmost.

    Raises:
        NonUnitarySequenceError: If the sequence contains a gradient crush
    """
    u = np.eye(4, dtype=complex)
    for event in seq.events:
        if isinstance(event, Crush):
            raise NonUnitarySequenceError("A gradient crush has no unitary representation")
        if isinstance(event, Rotation):
            step = rf_unitary(event.targets, event.axis, event.angle)
        else:
            step = delay_unitary(event.duration, system)
        u = step @ u
    return UnitaryMatrix(matrix=u)
