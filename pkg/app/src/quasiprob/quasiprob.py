"""
Element decompositions of states and effects, reconstruction from frame
coefficients, Kirkwood-Dirac marginals and negativity measures.
"""

from typing import List, Optional, Tuple, Union

import numpy as np
from loguru import logger

from ..core.errors import DimensionMismatchError, NotHermitianError, OperatorFrameError, WrongFlavorError
from ..core.models import DensityOperator, Operator, StateVector, Tolerance, resolve_tolerance
from ..frames.frames import kd_marginal_operators, require_complete, with_duals
from ..frames.models import FrameFlavor, IndexScheme, OperatorFrame
from .models import NegativityParts, QuasiDistribution, ReconstructionNegativity

StateLike = Union[DensityOperator, Operator]


def _check_dim(frame: OperatorFrame, op: Operator, name: str) -> None:
    if op.entries.shape != (frame.dim, frame.dim):
        raise DimensionMismatchError(
            f"{name} has shape {op.entries.shape} but frame {frame.frame_id} acts on d={frame.dim}"
        )


def born_probability(rho: StateLike, effect: Operator) -> float:
    """Tr(E rho), the direct rule every frame expansion must reproduce."""
    return float(np.real(np.trace(effect.entries @ rho.entries)))


def quasi_distribution(frame: OperatorFrame, rho: StateLike,
                       tol: Optional[Tolerance] = None) -> QuasiDistribution:
    """
    Coefficients P(i|a) = Tr(Lambda(i) rho) over the frame's index set.

    Parameters
    ----------
    frame : OperatorFrame
        Any frame of matching dimension.
    rho : DensityOperator
        The preparation.

    Returns
    -------
    QuasiDistribution
        Values aligned with ``frame.labels``; they total 1 for
        quasi_probability and povm frames.

    Examples
    --------
    >>> q = quasi_distribution(builtin_frame('kd', 2), ket(2, 0).projector())
    >>> q.value((0, 0))
    (0.5+0j)
    """
    tol = resolve_tolerance(tol)
    _check_dim(frame, rho, "state")
    values = np.einsum('ikl,lk->i', frame.element_stack(), rho.entries)
    distribution = QuasiDistribution(
        frame_id=frame.frame_id,
        family=frame.family,
        index_scheme=frame.index_scheme,
        labels=frame.labels,
        values=values,
    )
    if frame.flavor in (FrameFlavor.QUASI_PROBABILITY, FrameFlavor.POVM):
        total = distribution.total
        if abs(total - rho.trace()) > tol.bound(1.0):
            logger.warning(f"Distribution over {frame.frame_id} totals {total:.12g}, expected Tr(rho)")
    logger.debug(f"Quasi-distribution over {frame.frame_id}: min Re {values.real.min():.6g}")
    return distribution


def reconstruct_state(frame: OperatorFrame, q: QuasiDistribution,
                      tol: Optional[Tolerance] = None) -> Operator:
    """
    rho = sum_i P(i|a) R(i).

    Raises
    ------
    IncompleteFrameError
        If the frame does not span operator space (the rank is cited).
    """
    frame = require_complete(frame, "reconstruct_state", tol)
    if q.size != frame.size:
        raise DimensionMismatchError(f"distribution has {q.size} values, frame has {frame.size} elements")
    return Operator(factors=(frame.dim,), entries=np.einsum('i,ikl->kl', q.values, frame.dual_stack()))


def check_effect(effect: Operator, tol: Tolerance) -> None:
    asymmetry = effect.max_asymmetry()
    if asymmetry > tol.absolute:
        raise NotHermitianError(asymmetry, "effect")
    eigenvalues = np.linalg.eigvalsh((effect.entries + effect.entries.conj().T) / 2)
    if eigenvalues[0] < -tol.absolute or eigenvalues[-1] > 1 + tol.bound(1.0):
        raise OperatorFrameError(
            f"effect must satisfy 0 <= E <= I, eigenvalues span [{eigenvalues[0]:.6g}, {eigenvalues[-1]:.6g}]"
        )


def predict_probability(frame: OperatorFrame, rho: StateLike, effect: Operator,
                        tol: Optional[Tolerance] = None) -> complex:
    """
    P(b|a) = sum_i P(b|i) P(i|a) with P(b|i) = Tr(E R(i)) and P(i|a) = Tr(Lambda(i) rho).

    The result equals Tr(E rho) for every complete frame.
    """
    tol = resolve_tolerance(tol)
    frame = require_complete(frame, "predict_probability", tol)
    _check_dim(frame, rho, "state")
    _check_dim(frame, effect, "effect")
    check_effect(effect, tol)
    given_element = np.einsum('kl,ilk->i', effect.entries, frame.dual_stack())
    element_given_state = np.einsum('ikl,lk->i', frame.element_stack(), rho.entries)
    return complex(np.sum(given_element * element_given_state))


def swap_expansion(frame: OperatorFrame) -> np.ndarray:
    """sum_i R(i) (x) Lambda(i) as a dense d^2 x d^2 matrix."""
    frame = with_duals(frame)
    d = frame.dim
    blocks = np.einsum('iab,icd->acbd', frame.dual_stack(), frame.element_stack())
    return blocks.reshape(d * d, d * d)


def two_space_probability(frame: OperatorFrame, rho: StateLike, effect: Operator) -> complex:
    """
    Tr((E (x) rho) sum_i R(i) (x) Lambda(i)), the product trace over two Hilbert spaces.

    Equals Tr(E rho) whenever the frame is complete.
    """
    _check_dim(frame, rho, "state")
    _check_dim(frame, effect, "effect")
    joint = np.kron(effect.entries, rho.entries)
    return complex(np.trace(joint @ swap_expansion(frame)))


def kd_marginal_sums(q: QuasiDistribution) -> Tuple[np.ndarray, np.ndarray]:
    """
    Complex row and column sums of a KD distribution.

    Raises
    ------
    WrongFlavorError
        If ``q`` was not generated by a KD frame with pair indices.
    """
    if q.family != 'kd' or q.index_scheme != IndexScheme.PAIR:
        raise WrongFlavorError(
            f"KD marginals need a Kirkwood-Dirac distribution with pair indices, got {q.family} / {q.index_scheme.value}"
        )
    d = int(round(np.sqrt(q.size)))
    grid = np.zeros((d, d), dtype=np.complex128)
    for (a, b), value in zip(q.labels, q.values):
        grid[a, b] = value
    return grid.sum(axis=1), grid.sum(axis=0)


def marginals_kd(q: QuasiDistribution, tol: Optional[Tolerance] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Born probabilities recovered from a KD distribution.

    Returns
    -------
    tuple of numpy.ndarray
        ``over_a[a] = sum_b P(a, b) = <a|rho|a>`` and
        ``over_b[b] = sum_a P(a, b) = <b|rho|b>``.
    """
    tol = resolve_tolerance(tol)
    over_a, over_b = kd_marginal_sums(q)
    imaginary = max(float(np.abs(over_a.imag).max()), float(np.abs(over_b.imag).max()))
    if imaginary > tol.absolute:
        logger.warning(f"KD marginals of {q.frame_id} carry imaginary parts up to {imaginary:.3e}")
    return over_a.real, over_b.real


def negativity_parts(q: QuasiDistribution, tol: Optional[Tolerance] = None) -> NegativityParts:
    """Negative-real and imaginary mass, ignoring per-value noise below the tolerance."""
    tol = resolve_tolerance(tol)
    negative = np.maximum(0.0, -q.values.real)
    imaginary = np.abs(q.values.imag)
    negative[negative <= tol.absolute] = 0.0
    imaginary[imaginary <= tol.absolute] = 0.0
    return NegativityParts(negative_real=float(negative.sum()), imaginary=float(imaginary.sum()))


def negativity(q: QuasiDistribution, tol: Optional[Tolerance] = None) -> float:
    """
    sum_i max(0, -Re P(i)) + sum_i |Im P(i)|

    Zero exactly when every value is a non-negative real within tolerance.
    """
    return negativity_parts(q, tol).total


def reconstruction_negativity(frame: OperatorFrame, tol: Optional[Tolerance] = None) -> ReconstructionNegativity:
    """
    Minimum eigenvalue over the Hermitian duals R(i).

    Non-Hermitian duals are listed separately rather than included.
    """
    tol = resolve_tolerance(tol)
    frame = with_duals(frame, tol)
    best: Optional[Tuple[float, int]] = None
    skipped: List[List[int]] = []
    for position, dual in enumerate(frame.duals):
        if dual.max_asymmetry() > tol.absolute:
            skipped.append(list(frame.labels[position]))
            continue
        value = dual.min_eigenvalue()
        if best is None or value < best[0]:
            best = (value, position)
    if best is None:
        return ReconstructionNegativity(non_hermitian_duals=skipped)
    return ReconstructionNegativity(
        min_eigenvalue=best[0],
        argmin_index=list(frame.labels[best[1]]),
        non_hermitian_duals=skipped,
    )


def kd_zero_for_orthogonal(frame: OperatorFrame, psi: StateVector,
                           tol: Optional[Tolerance] = None) -> Tuple[List[Tuple[int, int]], float]:
    """
    Check that P(a, b|psi) vanishes whenever psi is orthogonal to |a> or |b>.

    The basis projectors are recovered from the operator marginals of the
    frame, so no bases need to be supplied.

    Returns
    -------
    tuple
        The pairs where a zero is required and the largest |P(a, b)| among them.
    """
    tol = resolve_tolerance(tol)
    over_a, over_b = kd_marginal_operators(frame)
    vector = psi.amplitudes
    weight_a = [abs(vector.conj() @ op.entries @ vector) for op in over_a]
    weight_b = [abs(vector.conj() @ op.entries @ vector) for op in over_b]
    q = quasi_distribution(frame, psi.projector(), tol)
    pairs, worst = [], 0.0
    for (a, b), value in zip(q.labels, q.values):
        if weight_a[a] <= tol.absolute or weight_b[b] <= tol.absolute:
            pairs.append((a, b))
            worst = max(worst, abs(value))
    return pairs, worst
