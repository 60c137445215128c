"""Build the CSV tables behind the walk curves, the figure data and the NMR runs."""

import logging
from typing import Iterable

import numpy as np

from .config import Settings
from .models import CsvTable
from .spin.experiment import MAX_STEPS, experiment_tvd, ideal_populations, run_experiment, walk_angle
from .walk.evolution import (
    ProbabilityDistribution,
    basis_state,
    classical_closed_form_cycle4,
    classical_evolve,
    measurement_probabilities,
    point_distribution,
    quantum_evolve,
    uniform_distribution,
)
from .walk.graph import cycle_generator
from .walk.measures import entropy_closed_form, observables_at, total_variation_distance

logger = logging.getLogger(__name__)

CLASSICAL_SPAN = 3.0
QUANTUM_SPAN = np.pi


def _grid(span: float, settings: Settings) -> list[float]:
    """Times t whose dimensionless values gamma*t cover [0, span]."""
    return [float(x) / settings.gamma for x in np.linspace(0.0, span, settings.grid_points)]


def walk_tables(settings: Settings) -> list[CsvTable]:
    """Node probabilities of the classical and quantum walks on the configured circle."""
    n = settings.n_nodes
    h = cycle_generator(n, settings.gamma)
    header = ["t"] + [f"P{k}" for k in range(n)]

    p0 = point_distribution(0, n)
    classical_rows = []
    for t in _grid(CLASSICAL_SPAN, settings):
        classical_rows.append([t, *map(float, classical_evolve(h, p0, t).probs)])

    psi0 = basis_state(0, n)
    quantum_rows = []
    for t in _grid(QUANTUM_SPAN, settings):
        probs = measurement_probabilities(quantum_evolve(h, psi0, t)).probs
        quantum_rows.append([t, *map(float, probs)])
    return [
        CsvTable(name="classical.csv", header=header, rows=classical_rows),
        CsvTable(name="quantum.csv", header=header, rows=quantum_rows),
    ]


def _classical_tvd(gamma: float, t: float) -> float:
    return total_variation_distance(classical_closed_form_cycle4(gamma, t), uniform_distribution(4))


def _emulated_tvds(settings: Settings, steps: Iterable[int]) -> dict[int, float]:
    system, noise = settings.spin_system(), settings.noise_model()
    return {n: experiment_tvd(run_experiment(n, system, noise)) for n in steps}


def fig3_table(settings: Settings) -> CsvTable:
    """Distance to uniform against time: classical and quantum theory, then the emulated runs."""
    gamma = settings.gamma
    rows: list[list[float | int]] = []
    for t in _grid(QUANTUM_SPAN, settings):
        rows.append([t, _classical_tvd(gamma, t), observables_at(gamma, t).tvd_to_uniform, 0])
    for n, measured in _emulated_tvds(settings, range(MAX_STEPS + 1)).items():
        t = walk_angle(n) / gamma
        rows.append([t, _classical_tvd(gamma, t), measured, 1])
    return CsvTable(name="fig3.csv", header=["t", "tvd_classical", "tvd_quantum", "expt"], rows=rows)


def fig4_table(settings: Settings) -> CsvTable:
    """Distance to uniform against entanglement over gamma*t in [0, pi/4], then the emulated runs.

    Emulated rows carry the measured distance in the tvd column and the
    theoretical entropy of their walk time, flagged expt=1.
    """
    rows: list[list[float | int]] = []
    for t in _grid(np.pi / 4, settings):
        obs = observables_at(settings.gamma, t)
        rows.append([obs.entanglement, obs.tvd_to_uniform, 0])
    for n, measured in _emulated_tvds(settings, range(1, MAX_STEPS + 1)).items():
        rows.append([entropy_closed_form(1.0, walk_angle(n)), measured, 1])
    return CsvTable(name="fig4.csv", header=["S", "tvd_quantum_theory", "expt"], rows=rows)


def nmr_table(settings: Settings, n_list: Iterable[int]) -> CsvTable:
    """One emulated experiment per n with its ideal counterpart."""
    system, noise = settings.spin_system(), settings.noise_model()
    uniform = uniform_distribution(4)
    rows: list[list[float | int]] = []
    for n in n_list:
        readout = run_experiment(n, system, noise)
        ideal = ProbabilityDistribution(probs=ideal_populations(n))
        rows.append([
            int(n),
            walk_angle(n),
            *map(float, readout.populations),
            experiment_tvd(readout),
            total_variation_distance(ideal, uniform),
            entropy_closed_form(1.0, walk_angle(n)),
        ])
        logger.debug("n=%d done", n)
    return CsvTable(
        name="nmr.csv",
        header=["n", "gamma_t", "P0", "P1", "P2", "P3", "tvd", "tvd_ideal", "S_theory"],
        rows=rows,
    )
