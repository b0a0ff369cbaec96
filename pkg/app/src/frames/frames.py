"""
Operator frame constructors and the pseudo-inverse dual.

Every constructor returns a frozen ``OperatorFrame`` with duals, rank, Gram
condition number and (when orthogonality holds) weights already populated.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..core.constants import PINV_RCOND, canonical_frame_name, is_odd_prime
from ..core.errors import FrameConstructionError, IncompleteFrameError, RankDeficientFrameError, WrongFlavorError
from ..core.hilbert import (
    computational_basis,
    fourier_basis,
    orthonormality_defect,
    rng_for,
    weyl_operator,
)
from ..core.models import Operator, StateVector, Tolerance, resolve_tolerance
from .models import FrameFlavor, IndexScheme, OperatorFrame

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

TETRAHEDRON = (
    (0.0, 0.0, 1.0),
    (2 * np.sqrt(2) / 3, 0.0, -1 / 3),
    (-np.sqrt(2) / 3, np.sqrt(2 / 3), -1 / 3),
    (-np.sqrt(2) / 3, -np.sqrt(2 / 3), -1 / 3),
)


def _operators(matrices: Sequence[np.ndarray], d: int) -> Tuple[Operator, ...]:
    return tuple(Operator(factors=(d,), entries=m) for m in matrices)


def element_matrix(elements: Sequence[Operator]) -> np.ndarray:
    """
    Row-major vectorization of the elements as an (m, d^2) matrix.

    With this layout Tr(Lambda R) = vec(Lambda) . vec(R^T).
    """
    return np.stack([op.entries.reshape(-1) for op in elements])


def span_summary(elements: Sequence[Operator]) -> Tuple[int, float]:
    """
    Rank of the span of the elements in operator space and the condition
    number of the pairwise-trace Gram matrix on its support.
    """
    singular = np.linalg.svd(element_matrix(elements), compute_uv=False)
    if singular.size == 0 or singular[0] == 0.0:
        return 0, float('inf')
    support = singular[singular > PINV_RCOND * singular[0]]
    return int(support.size), float((support[0] / support[-1]) ** 2)


def orthogonal_weights(elements: Sequence[Operator], duals: Sequence[Operator],
                       tol: Optional[Tolerance] = None) -> Optional[np.ndarray]:
    """
    Weights lambda_i = ||Lambda(i)||_F^2 when Lambda(i) = lambda_i R^dagger(i) for every i.

    Returns None as soon as one element is not proportional to its adjoint dual.
    """
    tol = resolve_tolerance(tol)
    weights = []
    for position, (element, dual) in enumerate(zip(elements, duals)):
        weight = float(np.linalg.norm(element.entries) ** 2)
        defect = float(np.linalg.norm(element.entries - weight * dual.entries.conj().T))
        if defect > tol.bound(np.sqrt(weight)):
            logger.debug(f"No weights: element {position} deviates from lambda R^dagger by {defect:.3e}")
            return None
        weights.append(weight)
    return np.array(weights)


def _assemble(frame_id: str, family: str, d: int, elements: Tuple[Operator, ...],
              duals: Tuple[Operator, ...], labels: Sequence[Tuple[int, ...]],
              index_scheme: IndexScheme, flavor: FrameFlavor,
              tol: Optional[Tolerance] = None) -> OperatorFrame:
    rank, condition = span_summary(elements)
    frame = OperatorFrame(
        frame_id=frame_id,
        family=family,
        dim=d,
        elements=elements,
        duals=duals,
        weights=orthogonal_weights(elements, duals, tol),
        labels=tuple(tuple(label) for label in labels),
        index_scheme=index_scheme,
        flavor=flavor,
        rank=rank,
        gram_condition_number=condition,
    )
    logger.info(f"Built frame {frame_id}: {frame.size} elements, rank {rank}/{d * d}, "
                f"weights {'defined' if frame.has_weights else 'undefined'}")
    return frame


def _check_basis(basis: Sequence[StateVector], tol: Tolerance, name: str = "basis") -> int:
    if not basis:
        raise FrameConstructionError(f"{name} is empty")
    d = basis[0].dim
    if len(basis) != d or any(v.dim != d for v in basis):
        raise FrameConstructionError(f"{name} must contain {d} vectors of dimension {d}, got {len(basis)}")
    defect = orthonormality_defect(basis)
    if defect > tol.bound(1.0):
        raise FrameConstructionError(f"{name} is not orthonormal (max |<v_j|v_k> - delta_jk| = {defect:.3e})")
    return d


def _check_dim(d: int) -> None:
    if d < 2:
        raise FrameConstructionError(f"dimension must be at least 2, got {d}")


def projective_frame(basis: Sequence[StateVector], tol: Optional[Tolerance] = None) -> OperatorFrame:
    """
    Projectors onto an orthonormal basis, Lambda(n) = R(n) = |n><n|.

    Parameters
    ----------
    basis : list of StateVector
        d orthonormal vectors.

    Returns
    -------
    OperatorFrame
        A povm-flavor frame with d elements and unit weights.

    Examples
    --------
    >>> frame = projective_frame(computational_basis(2))
    >>> frame.elements[0].entries
    array([[1.+0.j, 0.+0.j],
           [0.+0.j, 0.+0.j]])
    """
    tol = resolve_tolerance(tol)
    d = _check_basis(basis, tol)
    projectors = _operators([np.outer(v.amplitudes, v.amplitudes.conj()) for v in basis], d)
    return _assemble(f"projective-d{d}", 'projective', d, projectors, projectors,
                     [(n,) for n in range(d)], IndexScheme.SINGLE, FrameFlavor.POVM, tol)


def matrix_unit_frame(d: int, tol: Optional[Tolerance] = None) -> OperatorFrame:
    """Matrix units Lambda(n, n') = |n><n'| with duals R(n, n') = |n'><n|."""
    _check_dim(d)
    labels = [(n, k) for n in range(d) for k in range(d)]
    units = []
    for n, k in labels:
        unit = np.zeros((d, d), dtype=np.complex128)
        unit[n, k] = 1.0
        units.append(unit)
    elements = _operators(units, d)
    duals = _operators([u.T for u in units], d)
    return _assemble(f"matrix-unit-d{d}", 'matrix-unit', d, elements, duals,
                     labels, IndexScheme.PAIR, FrameFlavor.ORTHOGONAL_BASIS, tol)


def kd_frame(basis_a: Sequence[StateVector], basis_b: Sequence[StateVector],
             tol: Optional[Tolerance] = None) -> OperatorFrame:
    """
    Kirkwood-Dirac frame Lambda(a, b) = |b><b|a><a| with closed-form duals.

    R(a, b) = Lambda^dagger(a, b) / Tr(Lambda^dagger(a, b)), so every pair of
    basis vectors needs a nonzero overlap.

    Raises
    ------
    FrameConstructionError
        If a basis is not orthonormal, the dimensions differ, or some
        <a|b> vanishes (the offending pair is attached).
    """
    tol = resolve_tolerance(tol)
    d = _check_basis(basis_a, tol, "basis_a")
    if _check_basis(basis_b, tol, "basis_b") != d:
        raise FrameConstructionError(f"bases have different dimensions {d} and {basis_b[0].dim}")

    labels, elements, duals = [], [], []
    for a, vec_a in enumerate(basis_a):
        for b, vec_b in enumerate(basis_b):
            overlap = vec_b.inner(vec_a)
            if abs(overlap) <= tol.absolute:
                raise FrameConstructionError(
                    f"<a|b> = 0 for pair (a={a}, b={b}); Kirkwood-Dirac duals are undefined",
                    offending_pair=(a, b)
                )
            element = overlap * np.outer(vec_b.amplitudes, vec_a.amplitudes.conj())
            adjoint = element.conj().T
            labels.append((a, b))
            elements.append(element)
            duals.append(adjoint / np.trace(adjoint))
    return _assemble(f"kd-d{d}", 'kd', d, _operators(elements, d), _operators(duals, d),
                     labels, IndexScheme.PAIR, FrameFlavor.QUASI_PROBABILITY, tol)


def parity_operator(d: int) -> np.ndarray:
    """A(0, 0): the permutation |n> -> |-n mod d>."""
    parity = np.zeros((d, d), dtype=np.complex128)
    for n in range(d):
        parity[(-n) % d, n] = 1.0
    return parity


def phase_point_operator(d: int, q: int, p: int) -> np.ndarray:
    """A(q, p) = W(q, p) A(0, 0) W(q, p)^dagger."""
    weyl = weyl_operator(d, q, p).entries
    return weyl @ parity_operator(d) @ weyl.conj().T


def phase_point_frame(d: int, tol: Optional[Tolerance] = None) -> OperatorFrame:
    """
    Discrete Wigner frame on an odd prime dimension.

    Elements are Lambda(q, p) = A(q, p) / d with duals R(q, p) = A(q, p) and
    weights 1/d. Labels are (q, p) and support shift arithmetic mod d.

    Raises
    ------
    FrameConstructionError
        If ``d`` is not an odd prime.
    """
    if not is_odd_prime(d):
        raise FrameConstructionError(f"phase-point frames need an odd prime dimension, got d={d}")
    labels = [(q, p) for q in range(d) for p in range(d)]
    points = [phase_point_operator(d, q, p) for q, p in labels]
    return _assemble(f"phase-point-d{d}", 'phase-point', d,
                     _operators([a / d for a in points], d), _operators(points, d),
                     labels, IndexScheme.PHASE_POINT, FrameFlavor.QUASI_PROBABILITY, tol)


def bloch_operator(direction: Sequence[float], scale: float = 1.0) -> np.ndarray:
    """I + scale * (n . sigma) for a qubit."""
    return np.eye(2, dtype=np.complex128) + scale * sum(c * s for c, s in zip(direction, PAULI))


def sic_frame_qubit(tol: Optional[Tolerance] = None) -> OperatorFrame:
    """
    Tetrahedral qubit SIC-POVM, Lambda(i) = (I + n_i . sigma) / 4.

    Duals come from ``dual_frame``; each one has eigenvalues 2 and -1.
    """
    elements = _operators([bloch_operator(n) / 4 for n in TETRAHEDRON], 2)
    frame = OperatorFrame(
        frame_id="sic2-d2",
        family='sic2',
        dim=2,
        elements=elements,
        labels=tuple((i,) for i in range(4)),
        index_scheme=IndexScheme.SINGLE,
        flavor=FrameFlavor.POVM,
    )
    return dual_frame(frame, tol)


def dual_frame(frame: OperatorFrame, tol: Optional[Tolerance] = None) -> OperatorFrame:
    """
    Populate duals with the canonical (pseudo-inverse) solution.

    Stacking the vectorized elements as rows of M, the duals are the columns
    of pinv(M) reshaped and transposed, so that Tr(Lambda(i) R(j)) = delta_ij
    for exact frames and X = sum_i Tr(Lambda(i) X) R(i) for overcomplete ones.
    Singular values below 1e-12 of the largest are discarded.

    Raises
    ------
    RankDeficientFrameError
        If the elements are linearly dependent without spanning operator space.
    """
    d = frame.dim
    matrix = element_matrix(frame.elements)
    rank, condition = span_summary(frame.elements)
    if rank < frame.size and rank < d * d:
        logger.warning(f"Frame {frame.frame_id} is rank deficient: rank {rank} for {frame.size} elements")
        raise RankDeficientFrameError(rank, frame.size)

    inverse = np.linalg.pinv(matrix, rcond=PINV_RCOND)
    duals = _operators([inverse[:, j].reshape(d, d).T for j in range(frame.size)], d)
    logger.debug(f"Dual of {frame.frame_id}: rank {rank}, Gram condition number {condition:.3e}")
    return frame.rebuilt(
        duals=duals,
        weights=orthogonal_weights(frame.elements, duals, tol),
        rank=rank,
        gram_condition_number=condition,
    )


def with_duals(frame: OperatorFrame, tol: Optional[Tolerance] = None) -> OperatorFrame:
    """Return ``frame`` unchanged if it has duals and rank, otherwise compute them."""
    if not frame.has_duals:
        return dual_frame(frame, tol)
    if frame.rank is None:
        rank, condition = span_summary(frame.elements)
        return frame.rebuilt(rank=rank, gram_condition_number=condition)
    return frame


def require_complete(frame: OperatorFrame, operation: str,
                     tol: Optional[Tolerance] = None) -> OperatorFrame:
    """
    Return the frame with duals, refusing frames that do not span operator space.

    Raises
    ------
    IncompleteFrameError
        Citing the rank of the span.
    """
    frame = with_duals(frame, tol)
    target = frame.dim ** 2
    if not frame.is_complete:
        logger.warning(f"{operation} refused for {frame.frame_id}: rank {frame.rank} < {target}")
        raise IncompleteFrameError(frame.rank, target, operation)
    return frame


def deform_frame(frame: OperatorFrame, seed: int, real: bool = False,
                 tol: Optional[Tolerance] = None) -> OperatorFrame:
    """
    Random invertible mixing Lambda'(i) = sum_j T_ij Lambda(j) with recomputed duals.

    A real mixing matrix keeps Hermitian elements Hermitian.
    """
    rng = rng_for(seed)
    m = frame.size
    mixing = rng.standard_normal((m, m))
    if not real:
        mixing = mixing + 1j * rng.standard_normal((m, m))
    stack = np.einsum('ij,jkl->ikl', mixing, frame.element_stack())
    deformed = OperatorFrame(
        frame_id=f"{frame.frame_id}-deformed-{seed}",
        family='deformed',
        dim=frame.dim,
        elements=_operators(list(stack), frame.dim),
        labels=tuple((i,) for i in range(m)),
        index_scheme=IndexScheme.SINGLE,
        flavor=FrameFlavor.GENERIC,
    )
    return dual_frame(deformed, tol)


def builtin_frame(name: str, d: int, tol: Optional[Tolerance] = None) -> OperatorFrame:
    """
    Build a named frame.

    Parameters
    ----------
    name : str
        One of projective, matrix-unit, kd, phase-point, sic2 (aliases allowed).
    d : int
        Hilbert space dimension.

    Examples
    --------
    >>> builtin_frame('phase-point', 3).flavor
    <FrameFlavor.QUASI_PROBABILITY: 'quasi_probability'>
    """
    key = canonical_frame_name(name)
    _check_dim(d)
    if key == 'projective':
        return projective_frame(computational_basis(d), tol)
    if key == 'matrix-unit':
        return matrix_unit_frame(d, tol)
    if key == 'kd':
        return kd_frame(computational_basis(d), fourier_basis(d), tol)
    if key == 'phase-point':
        return phase_point_frame(d, tol)
    if d != 2:
        raise FrameConstructionError(f"sic2 is only defined for d=2, got d={d}")
    return sic_frame_qubit(tol)


def require_kd(frame: OperatorFrame) -> None:
    if frame.family != 'kd' or frame.index_scheme != IndexScheme.PAIR:
        raise WrongFlavorError(
            f"operation needs a Kirkwood-Dirac frame with pair indices, got {frame.family} / {frame.index_scheme.value}"
        )


def kd_marginal_operators(frame: OperatorFrame) -> Tuple[List[Operator], List[Operator]]:
    """
    Operator marginals of a KD frame: sum_b Lambda(a, b) = |a><a| and sum_a Lambda(a, b) = |b><b|.
    """
    require_kd(frame)
    d = frame.dim
    grid = frame.element_stack().reshape(d, d, d, d)
    over_a = [Operator(factors=(d,), entries=m) for m in grid.sum(axis=1)]
    over_b = [Operator(factors=(d,), entries=m) for m in grid.sum(axis=0)]
    return over_a, over_b


def kd_closed_form_residual(frame: OperatorFrame) -> float:
    """max_i ||R(i) - Lambda^dagger(i) / Tr(Lambda^dagger(i))||_F"""
    require_kd(frame)
    worst = 0.0
    for element, dual in zip(frame.elements, frame.dual_stack()):
        adjoint = element.entries.conj().T
        worst = max(worst, float(np.linalg.norm(dual - adjoint / np.trace(adjoint))))
    return worst


def shift_position(frame: OperatorFrame, position: int, shift: Tuple[int, int]) -> int:
    """
    Position of label i + m, with phase-space addition mod d.

    Raises
    ------
    WrongFlavorError
        If the frame is not indexed by phase-space points.
    """
    if frame.index_scheme != IndexScheme.PHASE_POINT:
        raise WrongFlavorError(f"index shifts are defined only for phase-point frames, got {frame.index_scheme.value}")
    d = frame.dim
    q, p = frame.labels[position]
    return frame.position(((q + shift[0]) % d, (p + shift[1]) % d))
