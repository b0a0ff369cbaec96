"""
Optimal symmetric 1 -> 2 cloning, its ideal-copy component and the
discrepancy operators that separate it from a copy of quasi-realities.

Every normalization below is measured and reported, never assumed.
"""

from typing import Optional, Tuple, Union

import numpy as np
from loguru import logger

from ..core.errors import DimensionMismatchError, StateValidationError
from ..core.hilbert import partial_trace
from ..core.models import DensityOperator, Operator, Tolerance, resolve_tolerance
from ..correlations.correlations import swap_operator
from ..frames.frames import require_complete, with_duals
from ..frames.models import OperatorFrame
from ..quasiprob.quasiprob import check_effect
from .models import CloneReport, DiscrepancyTable

Index = Union[int, Tuple[int, ...]]


def _check_input(rho: Operator, tol: Tolerance) -> int:
    trace = rho.trace()
    if abs(trace - 1.0) > tol.bound(1.0):
        raise StateValidationError([f"trace {trace.real:.12g}{trace.imag:+.3g}j != 1"])
    return rho.side


def _pair(d: int, matrix: np.ndarray) -> Operator:
    return Operator(factors=(d, d), entries=matrix)


def clone_map(rho: Operator, tol: Optional[Tolerance] = None) -> Operator:
    """
    rho_clone = (U_SWAP + I) (I (x) rho) (U_SWAP + I) / (2 (d + 1)).

    Raises
    ------
    StateValidationError
        If ``rho`` does not have unit trace.
    """
    d = _check_input(rho, resolve_tolerance(tol))
    symmetrizer = swap_operator(d).entries + np.eye(d * d)
    output = symmetrizer @ np.kron(np.eye(d), rho.entries) @ symmetrizer / (2 * (d + 1))
    return _pair(d, output)


def ideal_copy_component(rho: Operator) -> Operator:
    """C_ideal = (U_SWAP (I (x) rho) + (I (x) rho) U_SWAP) / (2d)"""
    d = rho.side
    swap = swap_operator(d).entries
    lifted = np.kron(np.eye(d), rho.entries)
    return _pair(d, (swap @ lifted + lifted @ swap) / (2 * d))


def ideal_copy_swap_side(rho: Operator) -> Operator:
    """The same component written with rho on system 1: ((rho (x) I) U_SWAP + U_SWAP (rho (x) I)) / (2d)."""
    d = rho.side
    swap = swap_operator(d).entries
    lifted = np.kron(rho.entries, np.eye(d))
    return _pair(d, (lifted @ swap + swap @ lifted) / (2 * d))


def clone_decomposition_residual(rho: Operator, tol: Optional[Tolerance] = None) -> float:
    """
    Distance between the clone output and
    (I (x) rho + rho (x) I) / (2 (d + 1)) + d / (d + 1) C_ideal.
    """
    d = rho.side
    eye = np.eye(d)
    mixture = (np.kron(eye, rho.entries) + np.kron(rho.entries, eye)) / (2 * (d + 1))
    decomposition = mixture + d / (d + 1) * ideal_copy_component(rho).entries
    return float(np.linalg.norm(clone_map(rho, tol).entries - decomposition))


def _jordan(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a @ b + b @ a) / 2


def ideal_copy_expansion_terms(frame: OperatorFrame, rho: Operator,
                               tol: Optional[Tolerance] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Both frame forms of the ideal component:
    (1/d) sum_i R(i) (x) {Lambda(i), rho}/2 and its mirror {Lambda(i), rho}/2 (x) R(i).
    """
    frame = require_complete(frame, "ideal_copy_expansion", tol)
    if rho.side != frame.dim:
        raise DimensionMismatchError(f"input of dimension {rho.side} for a d={frame.dim} frame")
    d = frame.dim
    duals = frame.dual_stack()
    products = np.stack([_jordan(element, rho.entries) for element in frame.element_stack()])
    first = np.einsum('iab,icd->acbd', duals, products).reshape(d * d, d * d) / d
    second = np.einsum('iab,icd->acbd', products, duals).reshape(d * d, d * d) / d
    return first, second


def ideal_copy_expansion(frame: OperatorFrame, rho: Operator, tol: Optional[Tolerance] = None) -> float:
    """
    Worst Frobenius distance of the two frame forms to ``ideal_copy_component``.

    Raises
    ------
    IncompleteFrameError
        If the frame does not span operator space.
    """
    first, second = ideal_copy_expansion_terms(frame, rho, tol)
    target = ideal_copy_component(rho).entries
    residual = max(float(np.linalg.norm(first - target)), float(np.linalg.norm(second - target)))
    logger.debug(f"Ideal-copy expansion over {frame.frame_id}: residual {residual:.3e}")
    return residual


def discrepancy_state(frame: OperatorFrame, index: Index, rho: Operator) -> Operator:
    """
    D_i(rho) = {Lambda(i), rho}/2 - Tr(Lambda(i) rho) R(i).

    Its trace is Tr(Lambda(i) rho) (1 - Tr R(i)), zero whenever the dual has unit trace.

    Raises
    ------
    InvalidIndexError
        If ``index`` is out of range.
    """
    frame = with_duals(frame)
    position = frame.position(index)
    element = frame.elements[position].entries
    dual = frame.duals[position].entries
    weight = np.trace(element @ rho.entries)
    return Operator(factors=(frame.dim,), entries=_jordan(element, rho.entries) - weight * dual)


def discrepancy_elements(frame: OperatorFrame, i: Index, j: Index) -> Operator:
    """D_j(R(i)) = {Lambda(j), R(i)}/2 - delta_ij R(i)"""
    frame = with_duals(frame)
    first, second = frame.position(i), frame.position(j)
    dual = frame.duals[first].entries
    selection = dual if first == second else np.zeros_like(dual)
    return Operator(factors=(frame.dim,), entries=_jordan(frame.elements[second].entries, dual) - selection)


def discrepancy_table(frame: OperatorFrame, tol: Optional[Tolerance] = None) -> DiscrepancyTable:
    """
    Norms of every element discrepancy; ``all_zero`` holds exactly for
    positive orthogonal (projective) frames.
    """
    tol = resolve_tolerance(tol)
    frame = with_duals(frame, tol)
    elements, duals = frame.element_stack(), frame.dual_stack()
    norms = np.zeros((frame.size, frame.size))
    for i in range(frame.size):
        for j in range(frame.size):
            selection = duals[i] if i == j else 0.0
            norms[i, j] = np.linalg.norm(_jordan(elements[j], duals[i]) - selection)
    table = DiscrepancyTable(
        frame_id=frame.frame_id,
        labels=[list(label) for label in frame.labels],
        norms=norms,
        tolerance=tol.absolute,
    )
    logger.debug(f"Element discrepancies of {frame.frame_id}: max norm {table.max_norm:.3e}")
    return table


def joint_ideal_statistics(e1: Operator, e2: Operator, rho: Operator, frame: OperatorFrame,
                           tol: Optional[Tolerance] = None) -> Tuple[complex, float]:
    """
    Joint statistics of the ideal copy, evaluated two ways.

    Returns
    -------
    tuple
        The frame sum sum_i Tr(E1 R(i)) [Tr(Lambda(i) E2 rho) + Tr(Lambda(i) rho E2)] / 2
        and the closed form Re Tr(E1 E2 rho). The value can be negative.

    Examples
    --------
    >>> zero, plus = ket(2, 0).projector(), fourier_basis(2)[0].projector()
    >>> joint_ideal_statistics(zero, plus, zero, builtin_frame('kd', 2))[1]
    0.5
    """
    tol = resolve_tolerance(tol)
    frame = require_complete(frame, "joint_ideal_statistics", tol)
    for effect in (e1, e2):
        check_effect(effect, tol)
        if effect.side != frame.dim:
            raise DimensionMismatchError(f"effect of dimension {effect.side} for a d={frame.dim} frame")
    given_element = np.einsum('kl,ilk->i', e1.entries, frame.dual_stack())
    ordered = e2.entries @ rho.entries
    reversed_order = rho.entries @ e2.entries
    elements = frame.element_stack()
    symmetric = (np.einsum('ikl,lk->i', elements, ordered) + np.einsum('ikl,lk->i', elements, reversed_order)) / 2
    frame_sum = complex(np.sum(given_element * symmetric))
    closed_form = float(np.real(np.trace(e1.entries @ e2.entries @ rho.entries)))
    return frame_sum, closed_form


def clone_report(rho: DensityOperator, frame: Optional[OperatorFrame] = None,
                 tol: Optional[Tolerance] = None) -> CloneReport:
    """
    Clone ``rho`` and measure every property of the output.

    With a frame, the report adds the frame-expansion residual of the
    ideal component (complete frames only) and the norm and trace of each
    discrepancy D_i(rho).
    """
    tol = resolve_tolerance(tol)
    d = _check_input(rho, tol)
    output = clone_map(rho, tol)
    swap = swap_operator(d).entries
    ideal = ideal_copy_component(rho)
    weight = float(np.real(ideal.trace()))
    ideal_marginals = [partial_trace(ideal, keep=k).entries / weight for k in (1, 2)]
    marginal_1 = DensityOperator.from_operator(partial_trace(output, keep=1), tol)
    marginal_2 = DensityOperator.from_operator(partial_trace(output, keep=2), tol)

    fidelity = None
    if abs(rho.purity() - 1.0) <= tol.bound(1.0):
        fidelity = float(np.real(np.trace(rho.entries @ marginal_1.entries)))

    fields = {}
    if frame is not None:
        frame = with_duals(frame, tol)
        if frame.rank == d * d:
            fields['expansion_residual'] = ideal_copy_expansion(frame, rho, tol)
        discrepancies = [discrepancy_state(frame, k, rho).entries for k in range(frame.size)]
        fields['frame_id'] = frame.frame_id
        fields['discrepancy_norms'] = [float(np.linalg.norm(D)) for D in discrepancies]
        fields['discrepancy_traces'] = [float(abs(np.trace(D))) for D in discrepancies]

    report = CloneReport(
        input=rho,
        output_pair=output,
        ideal_component=ideal,
        ideal_weight=weight,
        marginal_1=marginal_1,
        marginal_2=marginal_2,
        output_trace=float(np.real(output.trace())),
        swap_symmetry_residual=float(np.linalg.norm(swap @ output.entries @ swap - output.entries)),
        clone_fidelity=fidelity,
        ideal_marginal_residual=max(float(np.linalg.norm(m - rho.entries)) for m in ideal_marginals),
        ordering_residual=float(np.linalg.norm(ideal.entries - ideal_copy_swap_side(rho).entries)),
        product_distance=float(np.linalg.norm(ideal.entries / weight - np.kron(rho.entries, rho.entries))),
        decomposition_residual=clone_decomposition_residual(rho, tol),
        **fields,
    )
    logger.info(f"Cloned d={d} input: output trace {report.output_trace:.12g}, "
                f"marginal fidelity {report.clone_fidelity}")
    return report
