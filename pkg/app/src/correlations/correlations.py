"""
The SWAP expansion, the symmetric-fill identity and maximally entangled
correlations.

Conjugation R* is always entrywise in the computational basis.
"""

from typing import Optional, Sequence

import numpy as np
from loguru import logger

from ..core.errors import MissingWeightsError, WrongFlavorError
from ..core.hilbert import basis_matrix, orthonormality_defect, partial_transpose
from ..core.models import Operator, StateVector, Tolerance, resolve_tolerance
from ..frames.frames import require_complete, with_duals
from ..frames.models import OperatorFrame
from ..quasiprob.quasiprob import swap_expansion
from .models import CorrelationTable, SwapIdentityReport


def swap_operator(d: int) -> Operator:
    """
    U_SWAP |m, n> = |n, m>.

    Examples
    --------
    >>> swap_operator(2).entries.real.astype(int)
    array([[1, 0, 0, 0],
           [0, 0, 1, 0],
           [0, 1, 0, 0],
           [0, 0, 0, 1]])
    """
    swap = np.zeros((d * d, d * d), dtype=np.complex128)
    for m in range(d):
        for n in range(d):
            swap[n * d + m, m * d + n] = 1.0
    return Operator(factors=(d, d), entries=swap)


def max_entangled(d: int) -> StateVector:
    """|E> = d^(-1/2) sum_n |n, n>"""
    amplitudes = np.zeros(d * d, dtype=np.complex128)
    amplitudes[[n * d + n for n in range(d)]] = 1.0 / np.sqrt(d)
    return StateVector(amplitudes=amplitudes)


def symmetric_projector(d: int) -> np.ndarray:
    """Projector onto the symmetric subspace, built from its orthonormal basis."""
    vectors = []
    for m in range(d):
        for n in range(m, d):
            vector = np.zeros(d * d, dtype=np.complex128)
            vector[m * d + n] += 1.0
            vector[n * d + m] += 1.0
            vectors.append(vector / np.linalg.norm(vector))
    stacked = np.column_stack(vectors)
    return stacked @ stacked.conj().T


def _report(frame: OperatorFrame, tol: Tolerance, **fields) -> SwapIdentityReport:
    return SwapIdentityReport(
        frame_id=frame.frame_id,
        rank=frame.rank,
        target_rank=frame.dim ** 2,
        tolerance=tol.absolute,
        **fields,
    )


def verify_swap_identity(frame: OperatorFrame, tol: Optional[Tolerance] = None) -> SwapIdentityReport:
    """
    Residual of sum_i R(i) (x) Lambda(i) = U_SWAP.

    Incomplete frames are not an error here: the report carries their rank
    and leaves the residual unset.
    """
    tol = resolve_tolerance(tol)
    frame = with_duals(frame, tol)
    if frame.rank != frame.dim ** 2:
        logger.warning(f"SWAP identity skipped for {frame.frame_id}: rank {frame.rank} < {frame.dim ** 2}")
        return _report(frame, tol)
    residual = float(np.linalg.norm(swap_expansion(frame) - swap_operator(frame.dim).entries))
    report = _report(frame, tol, residual=residual)
    if report.swap_passed:
        logger.success(f"SWAP identity holds for {frame.frame_id} (residual {residual:.3e})")
    else:
        logger.warning(f"SWAP identity fails for {frame.frame_id} (residual {residual:.3e})")
    return report


def verify_fill_identity(frame: OperatorFrame, tol: Optional[Tolerance] = None) -> SwapIdentityReport:
    """
    Residual of sum_i (R(i) + I) (x) Lambda(i) = U_SWAP + I (x) I.

    Also checks U_SWAP + I (x) I = 2 P_sym against an independently built
    symmetric projector, and the idempotence and rank of (U_SWAP + I) / 2.

    Raises
    ------
    IncompleteFrameError
        If the frame is not complete.
    WrongFlavorError
        If the elements do not sum to the identity.
    """
    tol = resolve_tolerance(tol)
    frame = require_complete(frame, "verify_fill_identity", tol)
    d = frame.dim
    identity = np.eye(d)
    normalization = float(np.linalg.norm(frame.element_stack().sum(axis=0) - identity))
    if normalization > tol.bound(np.sqrt(d)):
        raise WrongFlavorError(
            f"fill identity requires elements summing to I; {frame.frame_id} deviates by {normalization:.3e}"
        )

    swap = swap_operator(d).entries
    expansion = swap_expansion(frame)
    filled = expansion + np.kron(identity, frame.element_stack().sum(axis=0))
    target = swap + np.eye(d * d)
    half = target / 2
    report = _report(
        frame, tol,
        residual=float(np.linalg.norm(expansion - swap)),
        fill_residual=float(np.linalg.norm(filled - target)),
        symmetric_projector_residual=float(np.linalg.norm(target - 2 * symmetric_projector(d))),
        idempotence_residual=float(np.linalg.norm(half @ half - half)),
        symmetric_rank=int(np.linalg.matrix_rank(half, tol=tol.absolute)),
    )
    logger.info(f"Fill identity for {frame.frame_id}: residual {report.fill_residual:.3e}")
    return report


def entangled_density(d: int) -> np.ndarray:
    vector = max_entangled(d).amplitudes
    return np.outer(vector, vector.conj())


def verify_pt_swap(d: int) -> float:
    """||(|E><E|)^(T_2) - U_SWAP / d||_F"""
    transposed = partial_transpose(Operator(factors=(d, d), entries=entangled_density(d)), 2)
    return float(np.linalg.norm(transposed.entries - swap_operator(d).entries / d))


def pt_spectrum(d: int) -> np.ndarray:
    """Eigenvalues of the partial transpose of |E><E|, ascending (+-1/d)."""
    transposed = partial_transpose(Operator(factors=(d, d), entries=entangled_density(d)), 2)
    return np.linalg.eigvalsh(transposed.entries)


def pt_min_eigenvalue(d: int) -> float:
    return float(pt_spectrum(d)[0])


def entangled_expansion(frame: OperatorFrame, tol: Optional[Tolerance] = None) -> float:
    """
    ||E><E| - (1/d) sum_i lambda_i R(i) (x) R*(i)||_F

    Raises
    ------
    MissingWeightsError
        If the frame is not orthogonal, so the weights are undefined.
    """
    frame = require_complete(frame, "entangled_expansion", tol)
    if not frame.has_weights:
        raise MissingWeightsError(f"frame {frame.frame_id} is not orthogonal; weights lambda_i are undefined")
    d = frame.dim
    duals = frame.dual_stack()
    blocks = np.einsum('i,iab,icd->acbd', frame.weights, duals, duals.conj())
    expansion = blocks.reshape(d * d, d * d) / d
    residual = float(np.linalg.norm(entangled_density(d) - expansion))
    logger.debug(f"Entangled expansion over {frame.frame_id}: residual {residual:.3e}")
    return residual


def conjugate_correlation_test(d: int, basis: Sequence[StateVector],
                               tol: Optional[Tolerance] = None) -> CorrelationTable:
    """
    Joint probabilities of {|a_k>} on system 1 and {|a_l*>} on system 2 of |E>.

    The outcomes always agree: P(k, l) = delta_kl / d.
    """
    tol = resolve_tolerance(tol)
    if len(basis) != d or orthonormality_defect(basis) > tol.bound(1.0):
        raise WrongFlavorError(f"conjugate correlation test needs {d} orthonormal vectors")
    vectors = basis_matrix(basis)
    state = max_entangled(d).amplitudes.reshape(d, d)
    # <a_k| (x) <a_l*| applied to |E>
    amplitudes = vectors.conj().T @ state @ vectors
    table = CorrelationTable(dim=d, table=np.abs(amplitudes) ** 2)
    logger.debug(f"Conjugate correlations d={d}: off-diagonal mass {table.off_diagonal_mass:.3e}")
    return table
