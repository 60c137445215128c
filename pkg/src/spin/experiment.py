"""The emulated NMR walk experiment: preparation, walk sequence, readout."""

import logging

import numpy as np

from ..pulses.ast import PulseSequence, bind_parameter
from ..pulses.evaluate import Bindings, evaluate
from ..pulses.parser import parse
from ..walk.evolution import ProbabilityDistribution, uniform_distribution
from ..walk.graph import InvalidArgumentError
from ..walk.measures import total_variation_distance
from .simulator import apply_gradient_crush, run_sequence
from .system import CorruptedStateError, DeviationMatrix, NoiseModel, PopulationReadout, SpinSystem

logger = logging.getLogger(__name__)

MAX_STEPS = 12

PREPARATION_SEQUENCE = "Rx1(pi/3) - Gz - Rx1(pi/4) - tau - Ry1(-pi/4) - Gz"

# Echo of total length n/(6J) in a frame where ZZ reads as -XX. The second
# pi pulse returns the echo to the identity, so the sequence implements
# exp(i g t XX) exp(i g t IX) with g t = n pi/12, g = pi J.
WALK_SEQUENCE = (
    "Rx2(-n*pi/6) - Ry1(pi/2) - Ry2(-pi/2)"
    " - d(n/(12*J)) - Rx12(pi) - d(n/(12*J)) - Rx12(-pi)"
    " - Ry1(-pi/2) - Ry2(pi/2)"
)

_NEGATIVE_POPULATION = 1e-6


def thermal_state() -> DeviationMatrix:
    """Equilibrium deviation 4 Iz1 + Iz2 = 2 ZI + IZ/2."""
    return DeviationMatrix(entries=np.diag([2.5, 1.5, -1.5, -2.5]).astype(complex))


def prepare_pseudo_pure(system: SpinSystem, noise: NoiseModel) -> DeviationMatrix:
    """Turn the thermal state into the effective pure state 2|00><00| - I/2."""
    prep = evaluate(parse(PREPARATION_SEQUENCE), Bindings(J=system.j_coupling))
    return run_sequence(thermal_state(), prep, system, noise)


def _check_step(n: int) -> None:
    if not 0 <= n <= MAX_STEPS:
        raise InvalidArgumentError(f"n must lie in 0..{MAX_STEPS}, got {n}")


def walk_sequence(n: int) -> PulseSequence:
    """Pulse program of walk time g t = n pi/12, still parametric in J."""
    _check_step(n)
    seq = bind_parameter(parse(WALK_SEQUENCE), "n", n)
    return seq.model_copy(update={"name": f"walk n={n}"})


def walk_angle(n: int) -> float:
    """g t = n pi / 12."""
    return n * np.pi / MAX_STEPS


def read_populations(rho: DeviationMatrix, tolerance: float = _NEGATIVE_POPULATION) -> PopulationReadout:
    """Invert the pseudo-pure embedding, p_k = (d_k + 1/2)/2, clamp and renormalize.

    Args:
        rho: Deviation matrix, normally crushed to its diagonal
        tolerance: How far below zero a population may dip before the state counts as corrupted

    Raises:
        CorruptedStateError: If a population is below -tolerance before clamping
    """
    if rho.max_coherence > 1e-9:
        logger.warning("Reading populations of a state with coherences up to %.3e; crush first", rho.max_coherence)
    raw = rho.diagonal
    pops = (raw + 0.5) / 2
    if pops.min() < -tolerance:
        raise CorruptedStateError(f"Deviation diagonal {raw} implies negative populations")
    pops = np.maximum(pops, 0.0)
    return PopulationReadout(populations=pops / pops.sum(), raw_diagonal=raw)


def dephasing_tolerance(total_delay: float, system: SpinSystem, noise: NoiseModel) -> float:
    """Largest population dip dephasing over `total_delay` seconds can explain.

    A dephased preparation is no longer exactly pseudo-pure, so its affine
    readout can fall slightly below zero; the dip is bounded by the fraction
    of coherence lost at the fastest decay rate.
    """
    if not noise.enabled:
        return _NEGATIVE_POPULATION
    fastest = 1.0 / system.t2_spin1 + 1.0 / system.t2_spin2
    return _NEGATIVE_POPULATION + float(-np.expm1(-total_delay * fastest))


def run_experiment(n: int, system: SpinSystem, noise: NoiseModel) -> PopulationReadout:
    """Full run: thermal state, preparation, walk sequence, crush, diagonal readout."""
    _check_step(n)
    rho = prepare_pseudo_pure(system, noise)
    walk = evaluate(walk_sequence(n), Bindings(n=n, J=system.j_coupling))
    rho = run_sequence(rho, walk, system, noise)
    tolerance = dephasing_tolerance(system.tau + walk.total_delay, system, noise)
    readout = read_populations(apply_gradient_crush(rho), tolerance)
    logger.debug("n=%d populations %s", n, np.round(readout.populations, 6))
    return readout


def ideal_populations(n: int) -> np.ndarray:
    """Walk probabilities cos^4, sin^2(2x)/4, sin^4, sin^2(2x)/4 at x = n pi/12."""
    _check_step(n)
    x = walk_angle(n)
    side = np.sin(2 * x) ** 2 / 4
    return np.array([np.cos(x) ** 4, side, np.sin(x) ** 4, side])


def experiment_tvd(readout: PopulationReadout) -> float:
    """Distance of the read-out populations to the uniform distribution."""
    return total_variation_distance(ProbabilityDistribution(probs=readout.populations), uniform_distribution(4))
