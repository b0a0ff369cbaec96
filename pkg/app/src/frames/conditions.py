"""
Positivity, orthogonality and completeness verdicts for operator frames, and
the certificate that no frame satisfies all three.
"""

from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from ..core.errors import InternalInconsistencyError
from ..core.hilbert import hermitian_eig
from ..core.models import Operator, Tolerance, resolve_tolerance
from .frames import element_matrix, span_summary, with_duals
from .models import (
    CompletenessVerdict,
    ConditionReport,
    NoGoCertificate,
    NoGoWitness,
    OperatorFrame,
    OrthogonalityVerdict,
    PositivityVerdict,
    WitnessKind,
)


def _min_eigenvalues(operators: Tuple[Operator, ...]) -> np.ndarray:
    stack = np.stack([op.entries for op in operators])
    hermitian_parts = (stack + np.conj(np.swapaxes(stack, 1, 2))) / 2
    return np.linalg.eigvalsh(hermitian_parts)[:, 0]


def _asymmetries(operators: Tuple[Operator, ...]) -> np.ndarray:
    return np.array([op.max_asymmetry() for op in operators])


def overlap_matrix(frame: OperatorFrame) -> np.ndarray:
    """Tr(Lambda(i) Lambda^dagger(j)) for all pairs."""
    matrix = element_matrix(frame.elements)
    return matrix @ matrix.conj().T


def biorthogonality_matrix(frame: OperatorFrame) -> np.ndarray:
    """Tr(Lambda(i) R(j)) for all pairs."""
    return np.einsum('ikl,jlk->ij', frame.element_stack(), frame.dual_stack())


def positivity_verdict(frame: OperatorFrame, tol: Tolerance) -> PositivityVerdict:
    asymmetry = _asymmetries(frame.elements)
    eigenvalues = _min_eigenvalues(frame.elements)
    hermitian = asymmetry <= tol.absolute
    worst_eig = int(np.argmin(eigenvalues))
    worst_asym = int(np.argmax(asymmetry))
    satisfied = bool(np.all(hermitian)) and float(eigenvalues.min()) >= -tol.absolute
    return PositivityVerdict(
        satisfied=satisfied,
        min_eigenvalue=float(eigenvalues[worst_eig]),
        min_eigenvalue_index=list(frame.labels[worst_eig]),
        max_asymmetry=float(asymmetry[worst_asym]),
        max_asymmetry_index=list(frame.labels[worst_asym]),
        non_hermitian_count=int(np.sum(~hermitian)),
    )


def orthogonality_verdict(frame: OperatorFrame, tol: Tolerance) -> OrthogonalityVerdict:
    overlaps = np.abs(overlap_matrix(frame))
    np.fill_diagonal(overlaps, 0.0)
    defect = np.abs(biorthogonality_matrix(frame) - np.eye(frame.size))
    pair = None
    max_overlap = 0.0
    if frame.size > 1:
        i, j = np.unravel_index(int(np.argmax(overlaps)), overlaps.shape)
        max_overlap = float(overlaps[i, j])
        pair = [list(frame.labels[i]), list(frame.labels[j])]
    return OrthogonalityVerdict(
        satisfied=max_overlap <= tol.absolute,
        max_overlap=max_overlap,
        overlap_pair=pair,
        biorthogonality_defect=float(defect.max()),
        weights_defined=frame.has_weights,
    )


def completeness_verdict(frame: OperatorFrame) -> CompletenessVerdict:
    rank = frame.rank if frame.rank is not None else span_summary(frame.elements)[0]
    target = frame.dim ** 2
    return CompletenessVerdict(satisfied=rank == target, rank=rank, target_rank=target)


def check_conditions(frame: OperatorFrame, tol: Optional[Tolerance] = None) -> ConditionReport:
    """
    Evaluate the three conditions on a frame, computing duals if absent.

    Parameters
    ----------
    frame : OperatorFrame
        Frame to judge.
    tol : Tolerance, optional
        Absolute tolerance on eigenvalues and overlaps; raw witness values
        are always reported.

    Returns
    -------
    ConditionReport
        Verdicts with witnesses and the number of satisfied conditions.

    Examples
    --------
    >>> check_conditions(projective_frame(computational_basis(2))).verdicts
    (True, True, False)
    """
    tol = resolve_tolerance(tol)
    frame = with_duals(frame, tol)
    positivity = positivity_verdict(frame, tol)
    orthogonality = orthogonality_verdict(frame, tol)
    completeness = completeness_verdict(frame)
    count = sum([positivity.satisfied, orthogonality.satisfied, completeness.satisfied])
    logger.debug(f"Conditions for {frame.frame_id}: positivity={positivity.satisfied}, "
                 f"orthogonality={orthogonality.satisfied}, completeness={completeness.satisfied}")
    return ConditionReport(
        frame_id=frame.frame_id,
        flavor=frame.flavor,
        positivity=positivity,
        orthogonality=orthogonality,
        completeness=completeness,
        satisfied_count=count,
        tolerance=tol.absolute,
    )


def _eigen_witness(kind: WitnessKind, frame: OperatorFrame, operators: Tuple[Operator, ...],
                   tol: Tolerance) -> Optional[NoGoWitness]:
    """Most negative eigenvalue among the Hermitian operators, with its eigenvector."""
    best = None
    for position, op in enumerate(operators):
        if op.max_asymmetry() > tol.absolute:
            continue
        value = op.min_eigenvalue()
        if value < -tol.absolute and (best is None or value < best[1]):
            best = (position, value)
    if best is None:
        return None
    position, _ = best
    eigenvalues, eigenvectors = hermitian_eig(operators[position], tol)
    vector = eigenvectors[-1].amplitudes
    return NoGoWitness(
        kind=kind,
        value=float(eigenvalues[-1]),
        index=list(frame.labels[position]),
        eigenvector=[[float(a.real), float(a.imag)] for a in vector],
    )


def _asymmetry_witness(kind: WitnessKind, frame: OperatorFrame, operators: Tuple[Operator, ...],
                       tol: Tolerance) -> Optional[NoGoWitness]:
    asymmetry = _asymmetries(operators)
    position = int(np.argmax(asymmetry))
    if asymmetry[position] <= tol.absolute:
        return None
    return NoGoWitness(kind=kind, value=float(asymmetry[position]), index=list(frame.labels[position]))


def no_go_certificate(frame: OperatorFrame, tol: Optional[Tolerance] = None) -> NoGoCertificate:
    """
    Exhibit why the frame satisfies at most two conditions.

    For a complete frame the primary witness is, in order of preference, a
    negative eigenvalue of a Hermitian dual R(i), a non-Hermitian element,
    a negative eigenvalue of an element, or a non-Hermitian dual. For an
    incomplete frame it is the rank deficit d^2 - rank. An overlap witness is
    appended whenever orthogonality fails.

    Raises
    ------
    InternalInconsistencyError
        If all three conditions are reported satisfied.
    """
    tol = resolve_tolerance(tol)
    frame = with_duals(frame, tol)
    report = check_conditions(frame, tol)
    if report.satisfied_count == 3:
        logger.error(f"Frame {frame.frame_id} reported all three conditions satisfied")
        raise InternalInconsistencyError(
            f"frame {frame.frame_id} satisfies positivity, orthogonality and completeness at tolerance {tol.absolute}"
        )

    witnesses: List[NoGoWitness] = []
    if not report.completeness.satisfied:
        witnesses.append(NoGoWitness(kind=WitnessKind.RANK_DEFICIT, value=float(report.completeness.deficit)))
    candidates = (
        _eigen_witness(WitnessKind.NON_POSITIVE_DUAL, frame, frame.duals, tol),
        _asymmetry_witness(WitnessKind.NON_HERMITIAN_ELEMENT, frame, frame.elements, tol),
        _eigen_witness(WitnessKind.NON_POSITIVE_ELEMENT, frame, frame.elements, tol),
        _asymmetry_witness(WitnessKind.NON_HERMITIAN_DUAL, frame, frame.duals, tol),
    )
    witnesses.extend(w for w in candidates if w is not None)
    if not report.orthogonality.satisfied:
        witnesses.append(NoGoWitness(
            kind=WitnessKind.OVERLAP,
            value=report.orthogonality.max_overlap,
            pair=report.orthogonality.overlap_pair,
        ))

    certificate = NoGoCertificate(
        frame_id=frame.frame_id,
        complete=report.completeness.satisfied,
        satisfied_count=report.satisfied_count,
        witnesses=witnesses,
    )
    logger.info(f"No-go certificate for {frame.frame_id}: primary witness {certificate.primary.kind.value} "
                f"({certificate.primary.value:.6g})")
    return certificate
