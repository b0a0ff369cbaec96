"""
Exact teleportation through the maximally entangled resource.

Systems are ordered A (input), R (resource half held with A), B (remote).
Outcome m = (q, p) is the Bell state (I (x) W(q, p)*)|E> on A, R.
"""

from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from ..core.constants import is_odd_prime
from ..core.errors import DimensionMismatchError, InvalidIndexError
from ..core.hilbert import partial_trace, rng_for, trace_distance, weyl_operator
from ..core.models import DensityOperator, Operator, StateVector, Tolerance, resolve_tolerance
from ..correlations.correlations import max_entangled
from ..frames.frames import phase_point_frame, shift_position
from .models import BellExpansionReport, BellShiftMatch, TeleportationOutcome

Outcome = Tuple[int, int]


def bell_labels(d: int) -> List[Outcome]:
    return [(q, p) for q in range(d) for p in range(d)]


def bell_state(d: int, outcome: Outcome) -> StateVector:
    """|E_{q,p}> = (I (x) W(q, p)*)|E>"""
    shift = np.kron(np.eye(d), weyl_operator(d, *outcome).entries.conj())
    return StateVector(amplitudes=shift @ max_entangled(d).amplitudes)


def bell_basis(d: int) -> List[StateVector]:
    """
    The d^2 generalized Bell states, ordered by (q, p) with q slow.

    Examples
    --------
    >>> len(bell_basis(3))
    9
    """
    return [bell_state(d, outcome) for outcome in bell_labels(d)]


def shifted_expansion(frame, shift: Outcome) -> np.ndarray:
    """(1/d) sum_i lambda_i R(i) (x) R*(i + m) over a phase-point frame."""
    d = frame.dim
    duals = frame.dual_stack()
    total = np.zeros((d * d, d * d), dtype=np.complex128)
    for position in range(frame.size):
        partner = shift_position(frame, position, shift)
        total += frame.weights[position] * np.kron(duals[position], duals[partner].conj())
    return total / d


def verify_bellm_expansion(d: int, tol: Optional[Tolerance] = None) -> BellExpansionReport:
    """
    Compare every shifted phase-point sum with the generalized Bell projectors.

    Each shift m is matched to the nearest Bell projector; the report keeps
    the matching, the worst residual, the rank-one defect of each sum and
    the distance of their total from I (x) I.

    Raises
    ------
    FrameConstructionError
        If ``d`` is not an odd prime.
    """
    tol = resolve_tolerance(tol)
    frame = phase_point_frame(d, tol)
    projectors = [np.outer(v.amplitudes, v.amplitudes.conj()) for v in bell_basis(d)]
    labels = bell_labels(d)
    matching, total = [], np.zeros((d * d, d * d), dtype=np.complex128)
    worst, rank_defect = 0.0, 0.0
    for shift in labels:
        expansion = shifted_expansion(frame, shift)
        total += expansion
        distances = [float(np.linalg.norm(expansion - projector)) for projector in projectors]
        best = int(np.argmin(distances))
        eigenvalues = np.linalg.eigvalsh((expansion + expansion.conj().T) / 2)[::-1]
        rank_defect = max(rank_defect, abs(eigenvalues[0] - 1.0), abs(eigenvalues[1]))
        worst = max(worst, distances[best])
        matching.append(BellShiftMatch(
            shift=list(shift),
            bell_label=list(labels[best]),
            residual=distances[best],
            largest_eigenvalue=float(eigenvalues[0]),
            second_eigenvalue=float(eigenvalues[1]),
        ))
    report = BellExpansionReport(
        dim=d,
        worst_residual=worst,
        completeness_residual=float(np.linalg.norm(total - np.eye(d * d))),
        rank_one_defect=float(rank_defect),
        matching=matching,
    )
    logger.info(f"Bell expansion d={d}: worst residual {worst:.3e}, "
                f"matching {'identity' if report.matching_is_identity else 'permuted'}")
    return report


def _check_outcome(d: int, outcome) -> Outcome:
    if len(outcome) != 2 or any(not 0 <= int(k) < d for k in outcome):
        raise InvalidIndexError(f"outcome {list(outcome)} is not a pair (q, p) with 0 <= q, p < {d}")
    return int(outcome[0]), int(outcome[1])


def _pure_vector(rho: DensityOperator, tol: Tolerance) -> Optional[np.ndarray]:
    if abs(rho.purity() - 1.0) > tol.bound(1.0):
        return None
    _, vectors = np.linalg.eigh(rho.entries)
    return vectors[:, -1]


def frame_sum_remote(rho: DensityOperator, outcome: Outcome, tol: Optional[Tolerance] = None) -> Operator:
    """sum_i lambda_i Tr(R(i) rho) R_B(i + m) over the phase-point frame."""
    frame = phase_point_frame(rho.side, tol)
    duals = frame.dual_stack()
    coefficients = np.einsum('ikl,lk->i', duals, rho.entries) * frame.weights
    remote = np.zeros_like(rho.entries)
    for position, coefficient in enumerate(coefficients):
        remote = remote + coefficient * duals[shift_position(frame, position, outcome)]
    return Operator(factors=(rho.side,), entries=remote)


def teleport(rho: DensityOperator, d: int, outcome, tol: Optional[Tolerance] = None) -> TeleportationOutcome:
    """
    Teleport ``rho`` and condition on the Bell outcome ``m``.

    The conditional remote state is computed by projecting A, R onto the
    Bell state and tracing them out. For odd prime ``d`` it is computed a
    second time from the phase-point frame sum and the two are compared.

    Parameters
    ----------
    rho : DensityOperator
        Input on system A.
    d : int
        Dimension of every system.
    outcome : tuple of int
        Bell outcome (q, p).

    Raises
    ------
    InvalidIndexError
        If the outcome is out of range.
    DimensionMismatchError
        If ``rho`` is not d x d.
    """
    tol = resolve_tolerance(tol)
    if rho.side != d:
        raise DimensionMismatchError(f"input of dimension {rho.side} cannot be teleported with d={d}")
    outcome = _check_outcome(d, outcome)

    resource = max_entangled(d).amplitudes
    joint = np.kron(rho.entries, np.outer(resource, resource.conj()))
    bell = bell_state(d, outcome).amplitudes
    projector = np.kron(np.outer(bell, bell.conj()), np.eye(d))
    projected = Operator(factors=(d * d, d), entries=projector @ joint @ projector)
    unnormalized = partial_trace(projected, keep=2).entries
    probability = float(np.real(np.trace(unnormalized)))
    remote = (unnormalized + unnormalized.conj().T) / (2 * probability)
    conditional = DensityOperator.from_matrix(remote, tol=tol)

    frame_sum, disagreement = None, None
    if is_odd_prime(d):
        frame_sum = frame_sum_remote(rho, outcome, tol)
        disagreement = float(np.linalg.norm(frame_sum.entries - conditional.entries))

    correction = weyl_operator(d, *outcome).dagger()
    corrected = correction.entries @ conditional.entries @ correction.entries.conj().T
    vector = _pure_vector(rho, tol)
    fidelity = None if vector is None else float(np.real(vector.conj() @ corrected @ vector))
    result = TeleportationOutcome(
        outcome_m=list(outcome),
        probability=probability,
        conditional_remote=conditional,
        frame_sum_remote=frame_sum,
        path_disagreement=disagreement,
        correction=correction,
        corrected_trace_distance=trace_distance(corrected, rho),
        fidelity_after_correction=fidelity,
    )
    logger.debug(f"Teleport d={d} m={outcome}: probability {probability:.6g}, "
                 f"corrected distance {result.corrected_trace_distance:.3e}")
    return result


def teleport_all(rho: DensityOperator, d: int, tol: Optional[Tolerance] = None) -> List[TeleportationOutcome]:
    """Every outcome of the Bell measurement; probabilities sum to 1."""
    outcomes = [teleport(rho, d, outcome, tol) for outcome in bell_labels(d)]
    total = sum(result.probability for result in outcomes)
    logger.info(f"Teleported over {len(outcomes)} outcomes, total probability {total:.12g}")
    return outcomes


def sample_teleportation(rho: DensityOperator, d: int, seed: int,
                         tol: Optional[Tolerance] = None) -> TeleportationOutcome:
    """Draw one Bell outcome with its Born probability and return its record."""
    outcomes = teleport_all(rho, d, tol)
    probabilities = np.array([result.probability for result in outcomes])
    cumulative = np.cumsum(probabilities / probabilities.sum())
    position = int(np.searchsorted(cumulative, rng_for(seed).random(), side='right'))
    return outcomes[min(position, len(outcomes) - 1)]
