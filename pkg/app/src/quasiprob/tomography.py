"""
Simulated linear-inversion tomography with POVM frames.

Estimates are never projected back onto the state space: negative
eigenvalues of the raw reconstruction are part of the result.
"""

from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from ..core.errors import DimensionMismatchError, OperatorFrameError, WrongFlavorError
from ..core.hilbert import rng_for, trace_distance
from ..core.models import DensityOperator, Operator, Tolerance, resolve_tolerance
from ..frames.frames import require_complete
from ..frames.models import FrameFlavor, OperatorFrame
from .models import TomographyRun


def linear_inversion(frame: OperatorFrame, frequencies: Sequence[float]) -> Operator:
    """
    Estimate sum_i f_i R(i) from observed (or exact) outcome frequencies.
    """
    frame = require_complete(frame, "linear_inversion")
    weights = np.asarray(frequencies, dtype=np.complex128)
    if weights.shape != (frame.size,):
        raise DimensionMismatchError(f"{weights.shape[0]} frequencies for {frame.size} outcomes")
    return Operator(factors=(frame.dim,), entries=np.einsum('i,ikl->kl', weights, frame.dual_stack()))


def outcome_probabilities(frame: OperatorFrame, rho: DensityOperator) -> np.ndarray:
    """Born probabilities Tr(Lambda(i) rho) of a POVM frame, clipped at zero."""
    probabilities = np.real(np.einsum('ikl,lk->i', frame.element_stack(), rho.entries))
    probabilities = np.clip(probabilities, 0.0, None)
    return probabilities / probabilities.sum()


def sample_counts(probabilities: np.ndarray, shots: int, seed: int) -> List[int]:
    """
    Multinomial counts by inverse-CDF sampling on the cumulative probabilities.

    Deterministic for a fixed seed.
    """
    if shots <= 0:
        raise OperatorFrameError(f"shots must be positive, got {shots}")
    rng = rng_for(seed)
    cumulative = np.cumsum(probabilities)
    cumulative[-1] = 1.0
    draws = np.searchsorted(cumulative, rng.random(shots), side='right')
    draws = np.minimum(draws, probabilities.size - 1)
    return [int(c) for c in np.bincount(draws, minlength=probabilities.size)]


def _require_povm(frame: OperatorFrame) -> None:
    if frame.flavor != FrameFlavor.POVM:
        raise WrongFlavorError(f"tomography needs a povm-flavor frame, got {frame.flavor.value}")


def simulate_tomography(frame: OperatorFrame, rho: DensityOperator, shots: int, seed: int,
                        tol: Optional[Tolerance] = None) -> TomographyRun:
    """
    Sample ``shots`` outcomes of the POVM and invert linearly.

    Parameters
    ----------
    frame : OperatorFrame
        Complete povm-flavor frame such as the qubit SIC.
    rho : DensityOperator
        True state.
    shots : int
        Number of measurement repetitions N.
    seed : int
        Seed of the PCG64 generator.

    Returns
    -------
    TomographyRun
        Counts, the raw estimate, its trace distance to ``rho`` and its
        minimum eigenvalue.

    Raises
    ------
    WrongFlavorError
        If the frame is not a POVM.
    IncompleteFrameError
        If the POVM is not informationally complete.
    """
    tol = resolve_tolerance(tol)
    _require_povm(frame)
    frame = require_complete(frame, "simulate_tomography", tol)
    if rho.entries.shape != (frame.dim, frame.dim):
        raise DimensionMismatchError(f"state of shape {rho.entries.shape} for a d={frame.dim} frame")

    counts = sample_counts(outcome_probabilities(frame, rho), shots, seed)
    estimate = linear_inversion(frame, np.asarray(counts, dtype=float) / shots)
    run = TomographyRun(
        frame_id=frame.frame_id,
        true_state=rho,
        shots=shots,
        counts=counts,
        estimate=estimate,
        trace_distance=trace_distance(estimate, rho),
        min_eigenvalue=estimate.min_eigenvalue(),
        seed=seed,
    )
    logger.debug(f"Tomography {frame.frame_id} N={shots} seed={seed}: trace distance {run.trace_distance:.4g}")
    return run


def error_scaling(frame: OperatorFrame, rho: DensityOperator, shot_counts: Sequence[int],
                  seeds: Sequence[int]) -> dict:
    """
    Log-log regression of the mean trace distance against N.

    Returns
    -------
    dict
        ``slope`` of log(error) versus log(N) (about -0.5 for linear
        inversion), with the mean error at each N.
    """
    means = []
    for shots in shot_counts:
        errors = [simulate_tomography(frame, rho, shots, seed).trace_distance for seed in seeds]
        means.append(float(np.mean(errors)))
    slope, _ = np.polyfit(np.log(shot_counts), np.log(means), 1)
    logger.info(f"Tomography error slope over N={list(shot_counts)}: {slope:.3f}")
    return {'shots': list(shot_counts), 'mean_trace_distance': means, 'slope': float(slope)}
