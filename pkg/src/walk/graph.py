"""Walk graphs, generator matrices and their Pauli-operator form."""

import logging
from enum import Enum
from functools import reduce

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from ..errors import CtqwError

logger = logging.getLogger(__name__)


class InvalidGraphError(CtqwError):
    """Raised when an adjacency matrix does not describe a simple undirected graph."""
    pass


class InvalidArgumentError(CtqwError):
    """Raised when an operation receives an argument outside its domain."""
    pass


def _frozen(array: np.ndarray) -> np.ndarray:
    """Return a read-only copy of an array."""
    out = np.array(array, copy=True)
    out.setflags(write=False)
    return out


class WalkGraph(BaseModel):
    """A simple undirected graph with a uniform jumping rate on every edge."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    adjacency: np.ndarray
    jump_rate: float = 1.0

    @field_validator("adjacency", mode="before")
    @classmethod
    def _check_adjacency(cls, value: object) -> np.ndarray:
        adjacency = np.asarray(value, dtype=float)
        if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
            raise InvalidGraphError(f"Adjacency must be square, got shape {adjacency.shape}")
        if adjacency.shape[0] < 2:
            raise InvalidGraphError("A walk graph needs at least 2 nodes")
        if not np.isin(adjacency, (0.0, 1.0)).all():
            raise InvalidGraphError("Adjacency entries must be 0 or 1")
        if not np.array_equal(adjacency, adjacency.T):
            raise InvalidGraphError("Adjacency must be symmetric (undirected graph)")
        if np.any(np.diag(adjacency) != 0):
            raise InvalidGraphError("Adjacency must have a zero diagonal (no self-loops)")
        return _frozen(adjacency)

    @field_validator("jump_rate")
    @classmethod
    def _check_rate(cls, value: float) -> float:
        if not np.isfinite(value) or value <= 0:
            raise InvalidArgumentError(f"Jumping rate must be positive, got {value}")
        return float(value)

    @property
    def num_nodes(self) -> int:
        """Number of nodes N."""
        return int(self.adjacency.shape[0])

    @property
    def degrees(self) -> np.ndarray:
        """Degree of every node."""
        return self.adjacency.sum(axis=1)


class GeneratorMatrix(BaseModel):
    """Real symmetric generator H: rate matrix of the classical walk, Hamiltonian of the quantum one."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _check_matrix(cls, value: object) -> np.ndarray:
        h = np.asarray(value)
        if np.iscomplexobj(h):
            if np.abs(h.imag).max(initial=0.0) > 0:
                raise InvalidArgumentError("Generator matrix must be real")
            h = h.real
        h = h.astype(float)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise InvalidArgumentError(f"Generator matrix must be square, got shape {h.shape}")
        scale = max(1.0, float(np.abs(h).max(initial=0.0)))
        if np.abs(h - h.T).max(initial=0.0) > 1e-12 * scale:
            raise InvalidArgumentError("Generator matrix must be symmetric")
        if np.abs(h.sum(axis=1)).max(initial=0.0) > 1e-9 * scale:
            raise InvalidArgumentError("Generator matrix rows must sum to zero")
        if h.size and np.linalg.eigvalsh(h).min() < -1e-9 * scale:
            raise InvalidArgumentError("Generator matrix must be positive semidefinite")
        return _frozen(h)

    @property
    def dim(self) -> int:
        """Matrix dimension N."""
        return int(self.matrix.shape[0])

    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of H."""
        return np.linalg.eigh(self.matrix)


class PauliLabel(str, Enum):
    """Single-qubit Pauli operators."""

    IDENTITY = "I"
    X = "X"
    Y = "Y"
    Z = "Z"

    @property
    def matrix(self) -> np.ndarray:
        """The 2x2 matrix realization."""
        return pauli_matrix(self)


_PAULI = {
    PauliLabel.IDENTITY: np.eye(2, dtype=complex),
    PauliLabel.X: np.array([[0, 1], [1, 0]], dtype=complex),
    PauliLabel.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    PauliLabel.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(label: PauliLabel | str) -> np.ndarray:
    """Return a fresh copy of the matrix for a Pauli label ("I", "X", "Y" or "Z")."""
    return _PAULI[PauliLabel(label)].copy()


def pauli_string(*labels: PauliLabel | str) -> np.ndarray:
    """Tensor product of Pauli operators, first label on the most significant qubit."""
    return reduce(np.kron, (pauli_matrix(label) for label in labels))


# === Graph constructors ===


def cycle_graph(n: int, gamma: float = 1.0) -> WalkGraph:
    """Circle of n nodes where node k is joined to (k-1) mod n and (k+1) mod n.

    Raises:
        InvalidGraphError: If n < 3 (a two-node circle has no unambiguous edge set)
    """
    if n < 3:
        raise InvalidGraphError(f"A cycle needs at least 3 nodes, got {n}")
    adjacency = np.zeros((n, n))
    for k in range(n):
        adjacency[k, (k + 1) % n] = 1.0
        adjacency[(k + 1) % n, k] = 1.0
    return WalkGraph(adjacency=adjacency, jump_rate=gamma)


def complete_graph(n: int, gamma: float = 1.0) -> WalkGraph:
    """Every pair of distinct nodes joined by an edge."""
    return WalkGraph(adjacency=np.ones((n, n)) - np.eye(n), jump_rate=gamma)


def path_graph(n: int, gamma: float = 1.0) -> WalkGraph:
    """Open chain 0 - 1 - ... - (n-1)."""
    adjacency = np.zeros((n, n))
    for k in range(n - 1):
        adjacency[k, k + 1] = adjacency[k + 1, k] = 1.0
    return WalkGraph(adjacency=adjacency, jump_rate=gamma)


def hypercube_graph(dimension: int, gamma: float = 1.0) -> WalkGraph:
    """d-dimensional hypercube: 2^d nodes, edges between labels at Hamming distance 1."""
    if dimension < 1:
        raise InvalidGraphError(f"Hypercube dimension must be at least 1, got {dimension}")
    n = 2**dimension
    adjacency = np.zeros((n, n))
    for k in range(n):
        for bit in range(dimension):
            adjacency[k, k ^ (1 << bit)] = 1.0
    return WalkGraph(adjacency=adjacency, jump_rate=gamma)


# === Generators ===


def graph_generator(graph: WalkGraph) -> GeneratorMatrix:
    """Generator H = gamma * (D - A) of the walk on a graph."""
    h = graph.jump_rate * (np.diag(graph.degrees) - graph.adjacency)
    return GeneratorMatrix(matrix=h)


def cycle_generator(n: int, gamma: float) -> GeneratorMatrix:
    """Generator of the walk on an n-node circle.

    Args:
        n: Node count, at least 3
        gamma: Jumping rate

    Returns:
        GeneratorMatrix with 2*gamma on the diagonal and -gamma between neighbours
    """
    return graph_generator(cycle_graph(n, gamma))


def pauli_hamiltonian_cycle4(gamma: float) -> GeneratorMatrix:
    """Four-node circle Hamiltonian written on two qubits.

    H = 2*gamma I(x)I - gamma (I(x)X + X(x)X), with node k stored as |q1 q2>
    (see encode_node). I(x)X joins 0-1 and 2-3, X(x)X joins 0-3 and 1-2.
    """
    if not np.isfinite(gamma) or gamma <= 0:
        raise InvalidArgumentError(f"Jumping rate must be positive, got {gamma}")
    h = 2 * gamma * pauli_string("I", "I") - gamma * (pauli_string("I", "X") + pauli_string("X", "X"))
    return GeneratorMatrix(matrix=h.real)


def encode_node(k: int, width: int) -> str:
    """Binary label of node k on `width` qubits, qubit 1 being the most significant bit.

    Raises:
        InvalidArgumentError: If k is outside [0, 2**width)
    """
    if width < 1 or not 0 <= k < 2**width:
        raise InvalidArgumentError(f"Node {k} cannot be encoded on {width} qubits")
    return format(k, f"0{width}b")


def decode_node(bits: str) -> int:
    """Inverse of encode_node."""
    if not bits or any(b not in "01" for b in bits):
        raise InvalidArgumentError(f"Not a qubit label: {bits!r}")
    return int(bits, 2)
