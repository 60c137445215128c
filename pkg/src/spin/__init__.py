"""Emulation of a two-spin NMR quantum processor."""

from .experiment import (
    PREPARATION_SEQUENCE,
    WALK_SEQUENCE,
    experiment_tvd,
    ideal_populations,
    prepare_pseudo_pure,
    read_populations,
    run_experiment,
    thermal_state,
    walk_angle,
    walk_sequence,
)
from .simulator import (
    NonUnitarySequenceError,
    apply_delay,
    apply_gradient_crush,
    apply_rf,
    run_sequence,
    sequence_unitary,
)
from .system import (
    CorruptedStateError,
    DeviationMatrix,
    NoiseModel,
    PopulationReadout,
    SpinSystem,
)

__all__ = [
    "PREPARATION_SEQUENCE",
    "WALK_SEQUENCE",
    "CorruptedStateError",
    "DeviationMatrix",
    "NoiseModel",
    "NonUnitarySequenceError",
    "PopulationReadout",
    "SpinSystem",
    "apply_delay",
    "apply_gradient_crush",
    "apply_rf",
    "experiment_tvd",
    "ideal_populations",
    "prepare_pseudo_pure",
    "read_populations",
    "run_experiment",
    "run_sequence",
    "sequence_unitary",
    "thermal_state",
    "walk_angle",
    "walk_sequence",
]
