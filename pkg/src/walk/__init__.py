"""Classical and quantum continuous-time walks on graphs."""

from .evolution import (
    ProbabilityDistribution,
    StateVector,
    UnitaryMatrix,
    basis_state,
    classical_closed_form_cycle4,
    classical_evolve,
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
from .graph import (
    GeneratorMatrix,
    InvalidArgumentError,
    InvalidGraphError,
    PauliLabel,
    WalkGraph,
    cycle_generator,
    encode_node,
    graph_generator,
    pauli_hamiltonian_cycle4,
)
from .measures import (
    UnsupportedDimensionError,
    WalkObservables,
    entanglement_entropy,
    fidelity,
    observables_at,
    total_variation_distance,
)

__all__ = [
    "GeneratorMatrix",
    "InvalidArgumentError",
    "InvalidGraphError",
    "PauliLabel",
    "ProbabilityDistribution",
    "StateVector",
    "UnitaryMatrix",
    "UnsupportedDimensionError",
    "WalkGraph",
    "WalkObservables",
    "basis_state",
    "classical_closed_form_cycle4",
    "classical_evolve",
    "cycle_generator",
    "dense_unitary",
    "encode_node",
    "entanglement_entropy",
    "evolution_unitary",
    "factored_unitary_cycle4",
    "fidelity",
    "graph_generator",
    "integrate_master_equation",
    "measurement_probabilities",
    "observables_at",
    "pauli_hamiltonian_cycle4",
    "point_distribution",
    "quantum_closed_form_cycle4",
    "quantum_evolve",
    "total_variation_distance",
    "uniform_distribution",
]
