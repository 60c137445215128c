"""Physical constants, noise settings and state records of the two-spin NMR processor."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import CtqwError
from ..walk.graph import InvalidArgumentError, _frozen

# Bit of each basis state |q1 q2> for spin 1 and spin 2 (spin 1 most significant).
SPIN1_BITS = np.array([0, 0, 1, 1])
SPIN2_BITS = np.array([0, 1, 0, 1])


class CorruptedStateError(CtqwError):
    """Raised when a deviation matrix maps to clearly negative populations."""
    pass


class SpinSystem(BaseModel):
    """Heteronuclear spin pair: spin 1 is the proton, spin 2 the carbon."""

    model_config = ConfigDict(frozen=True)

    j_coupling: float = Field(default=215.0, description="Scalar coupling J in Hz")
    offset_1: float = Field(default=0.0, description="Spin 1 resonance offset in Hz")
    offset_2: float = Field(default=0.0, description="Spin 2 resonance offset in Hz")
    t2_spin1: float = Field(default=0.4, description="Spin 1 transverse relaxation time in seconds")
    t2_spin2: float = Field(default=0.3, description="Spin 2 transverse relaxation time in seconds")

    @model_validator(mode="after")
    def _check_constants(self) -> "SpinSystem":
        for name in ("j_coupling", "t2_spin1", "t2_spin2"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise InvalidArgumentError(f"{name} must be positive, got {value}")
        return self

    @property
    def tau(self) -> float:
        """The 1/(2J) delay in seconds."""
        return 1.0 / (2.0 * self.j_coupling)


class NoiseModel(BaseModel):
    """Independent transverse dephasing of each spin at rate 1/T2, applied during delays."""

    model_config = ConfigDict(frozen=True)

    enabled: bool = False

    def dephasing_factors(self, duration: float, system: SpinSystem) -> np.ndarray:
        """Element-wise decay of a deviation matrix over `duration` seconds.

        Entry (i, j) decays by exp(-t/T2) for every spin whose bit differs
        between basis states i and j; diagonals never decay.
        """
        if not self.enabled:
            return np.ones((4, 4))
        flips_1 = SPIN1_BITS[:, None] != SPIN1_BITS[None, :]
        flips_2 = SPIN2_BITS[:, None] != SPIN2_BITS[None, :]
        rate = flips_1 / system.t2_spin1 + flips_2 / system.t2_spin2
        return np.exp(-duration * rate)


class DeviationMatrix(BaseModel):
    """Traceless Hermitian part of the 4x4 NMR density matrix."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _check_entries(cls, value: object) -> np.ndarray:
        rho = np.asarray(value, dtype=complex)
        if rho.shape != (4, 4):
            raise InvalidArgumentError(f"Deviation matrix must be 4x4, got shape {rho.shape}")
        if np.abs(rho - rho.conj().T).max() > 1e-12:
            raise InvalidArgumentError("Deviation matrix must be Hermitian")
        if abs(np.trace(rho)) > 1e-12:
            raise InvalidArgumentError(f"Deviation matrix must be traceless, trace is {np.trace(rho):.3e}")
        return _frozen(rho)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "DeviationMatrix":
        """Build from a numerically near-Hermitian result, symmetrizing rounding error away."""
        matrix = np.asarray(matrix, dtype=complex)
        return cls(entries=(matrix + matrix.conj().T) / 2)

    @property
    def diagonal(self) -> np.ndarray:
        """Real diagonal d_k."""
        return self.entries.diagonal().real.copy()

    @property
    def max_coherence(self) -> float:
        """Largest off-diagonal magnitude."""
        return float(np.abs(self.entries - np.diag(self.entries.diagonal())).max())


class PopulationReadout(BaseModel):
    """Node populations recovered from the diagonal of a deviation matrix."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    populations: np.ndarray
    raw_diagonal: np.ndarray

    @field_validator("populations", mode="before")
    @classmethod
    def _check_populations(cls, value: object) -> np.ndarray:
        pops = np.asarray(value, dtype=float)
        if pops.shape != (4,):
            raise InvalidArgumentError(f"Expected 4 populations, got shape {pops.shape}")
        if pops.min() < 0 or abs(pops.sum() - 1.0) > 1e-9:
            raise InvalidArgumentError(f"Populations must be non-negative and sum to 1, got {pops}")
        return _frozen(pops)

    @field_validator("raw_diagonal", mode="before")
    @classmethod
    def _check_raw(cls, value: object) -> np.ndarray:
        return _frozen(np.asarray(value, dtype=float))
