"""
Dense complex linear algebra over finite-dimensional Hilbert spaces.

Every function here is pure: it depends only on its arguments (plus an
explicit seed where randomness is involved) and returns new frozen values.
"""

from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from .errors import DimensionMismatchError, NotBipartiteError, NotHermitianError, OperatorFrameError
from .models import DensityOperator, Operator, StateVector, Tolerance, resolve_tolerance

ArrayLike = Union[Operator, np.ndarray]


def _as_array(x: ArrayLike) -> np.ndarray:
    return x.entries if isinstance(x, Operator) else np.asarray(x, dtype=np.complex128)


def rng_for(seed: int) -> np.random.Generator:
    """Portable seeded generator (PCG64) used for every random draw."""
    return np.random.Generator(np.random.PCG64(seed))


def identity(d: int) -> Operator:
    return Operator(factors=(d,), entries=np.eye(d))


def tensor(a: Operator, b: Operator) -> Operator:
    """
    Kronecker product with factors ``(side(a), side(b))``.

    Factor 1 is the slow index, so ``|m>|n>`` maps to row ``m * side(b) + n``.
    """
    return Operator(factors=(a.side, b.side), entries=np.kron(a.entries, b.entries))


def _bipartite_blocks(x: Operator) -> Tuple[int, int, np.ndarray]:
    if not x.is_bipartite:
        raise NotBipartiteError(f"operator has factors {list(x.factors)}, two are required")
    d1, d2 = x.factors
    return d1, d2, x.entries.reshape(d1, d2, d1, d2)


def _check_selector(selector: int, name: str) -> None:
    if selector not in (1, 2):
        raise OperatorFrameError(f"{name} must be 1 or 2, got {selector}")


def partial_trace(x: Operator, keep: int) -> Operator:
    """
    Trace out the factor not selected by ``keep`` (1 or 2).

    Examples
    --------
    >>> partial_trace(tensor(rho, sigma), keep=1)  # rho * Tr(sigma)
    """
    _check_selector(keep, 'keep')
    d1, d2, blocks = _bipartite_blocks(x)
    if keep == 1:
        reduced = np.einsum('ajbj->ab', blocks)
        return Operator(factors=(d1,), entries=reduced)
    reduced = np.einsum('jajb->ab', blocks)
    return Operator(factors=(d2,), entries=reduced)


def partial_transpose(x: Operator, subsystem: int) -> Operator:
    """Transpose the indices of the selected factor; an involution."""
    _check_selector(subsystem, 'subsystem')
    d1, d2, blocks = _bipartite_blocks(x)
    if subsystem == 1:
        swapped = blocks.transpose(2, 1, 0, 3)
    else:
        swapped = blocks.transpose(0, 3, 2, 1)
    return Operator(factors=x.factors, entries=swapped.reshape(d1 * d2, d1 * d2))


def _phase_normalized(vector: np.ndarray, cutoff: float) -> np.ndarray:
    nonzero = np.flatnonzero(np.abs(vector) > cutoff)
    if nonzero.size == 0:
        return vector
    first = vector[nonzero[0]]
    return vector * (abs(first) / first)


def _lexicographic_key(vector: np.ndarray) -> Tuple[float, ...]:
    key = []
    for amplitude in np.round(vector, 12):
        key.extend((amplitude.real, amplitude.imag))
    return tuple(key)


def hermitian_eig(a: Operator, tol: Optional[Tolerance] = None) -> Tuple[np.ndarray, List[StateVector]]:
    """
    Eigen-decomposition of a Hermitian operator.

    Eigenvalues are returned in descending order. Each eigenvector is phase
    normalized so its first nonzero entry is real and positive; eigenvalues
    equal within tolerance are ordered by the lexicographic order of their
    eigenvector entries (real part, then imaginary part).

    Raises
    ------
    NotHermitianError
        Reporting the maximum asymmetry when ``a`` is not Hermitian.
    """
    tol = resolve_tolerance(tol)
    asymmetry = a.max_asymmetry()
    scale = float(np.max(np.abs(a.entries))) if a.side else 0.0
    if asymmetry > tol.bound(scale):
        raise NotHermitianError(asymmetry)
    hermitian_part = (a.entries + a.entries.conj().T) / 2
    values, vectors = np.linalg.eigh(hermitian_part)
    order = np.argsort(-values, kind='stable')
    values = values[order]
    vectors = [_phase_normalized(vectors[:, k], 1e-12) for k in order]

    # Group near-degenerate eigenvalues and break ties deterministically
    ordered: List[int] = []
    start = 0
    for stop in range(1, len(values) + 1):
        if stop == len(values) or values[start] - values[stop] > tol.bound(values[start]):
            group = sorted(range(start, stop), key=lambda k: _lexicographic_key(vectors[k]))
            ordered.extend(group)
            start = stop
    eigenvalues = np.array([values[k] for k in ordered])
    eigenvectors = [StateVector(amplitudes=vectors[k]) for k in ordered]
    return eigenvalues, eigenvectors


def haar_random_pure(d: int, seed: int) -> StateVector:
    """Haar-distributed pure state, deterministic for a fixed seed."""
    if d < 2:
        raise OperatorFrameError(f"dimension must be at least 2, got {d}")
    rng = rng_for(seed)
    amplitudes = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return StateVector(amplitudes=amplitudes / np.linalg.norm(amplitudes))


def haar_random_unitary(d: int, seed: int) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    rng = rng_for(seed)
    ginibre = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(ginibre)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_basis(d: int, seed: int) -> List[StateVector]:
    """Columns of a Haar-random unitary as an orthonormal basis."""
    unitary = haar_random_unitary(d, seed)
    return [StateVector(amplitudes=unitary[:, k]) for k in range(d)]


def random_density(d: int, seed: int, rank: Optional[int] = None) -> DensityOperator:
    """Random mixed state G G^dagger / Tr(G G^dagger) with G a d x rank Ginibre matrix."""
    rng = rng_for(seed)
    rank = rank or d
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return DensityOperator.from_matrix(rho / np.trace(rho))


def random_hermitian(d: int, seed: int) -> Operator:
    rng = rng_for(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return Operator.from_matrix((g + g.conj().T) / 2)


def random_effect(d: int, seed: int) -> Operator:
    """Random effect 0 <= E <= I (a rescaled random positive operator)."""
    rng = rng_for(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    positive = g @ g.conj().T
    largest = float(np.linalg.eigvalsh(positive)[-1])
    return Operator.from_matrix(positive / largest * rng.uniform(0.2, 1.0))


def weyl_operator(d: int, q: int, p: int) -> Operator:
    """
    Displacement W(q, p) = X^q Z^p with X|n> = |n+1 mod d> and Z|n> = w^n |n>.

    The composition law is W(q,p) W(q',p') = w^(p q') W(q+q', p+p').
    """
    q %= d
    p %= d
    omega = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d), q, axis=0)
    clock = np.diag(omega ** (p * np.arange(d)))
    return Operator(factors=(d,), entries=shift @ clock)


def frobenius_distance(a: ArrayLike, b: ArrayLike) -> float:
    """||A - B||_F; raises DimensionMismatchError on unequal shapes."""
    left, right = _as_array(a), _as_array(b)
    if left.shape != right.shape:
        raise DimensionMismatchError(f"cannot compare shapes {left.shape} and {right.shape}")
    return float(np.linalg.norm(left - right))


def ket(d: int, n: int) -> StateVector:
    amplitudes = np.zeros(d, dtype=np.complex128)
    amplitudes[n % d] = 1.0
    return StateVector(amplitudes=amplitudes)


def computational_basis(d: int) -> List[StateVector]:
    return [ket(d, n) for n in range(d)]


def fourier_basis(d: int) -> List[StateVector]:
    """|f_k> = d^(-1/2) sum_n w^(k n) |n>, mutually unbiased with the computational basis."""
    omega = np.exp(2j * np.pi / d)
    n = np.arange(d)
    return [StateVector(amplitudes=omega ** (k * n) / np.sqrt(d)) for k in range(d)]


def basis_matrix(basis: Sequence[StateVector]) -> np.ndarray:
    """Stack basis vectors as columns."""
    return np.column_stack([v.amplitudes for v in basis])


def orthonormality_defect(basis: Sequence[StateVector]) -> float:
    """max |<v_j|v_k> - delta_jk|"""
    matrix = basis_matrix(basis)
    gram = matrix.conj().T @ matrix
    return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))


def projector(v: StateVector) -> Operator:
    return Operator(factors=(v.dim,), entries=np.outer(v.amplitudes, v.amplitudes.conj()))


def trace_distance(a: ArrayLike, b: ArrayLike) -> float:
    """Half the trace norm of the (Hermitian part of the) difference."""
    diff = _as_array(a) - _as_array(b)
    hermitian = (diff + diff.conj().T) / 2
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(hermitian))))


def fidelity_pure(psi: StateVector, rho: ArrayLike) -> float:
    """<psi| rho |psi> for a pure reference state."""
    vector = psi.amplitudes
    return float(np.real(vector.conj() @ _as_array(rho) @ vector))


def purity(rho: ArrayLike) -> float:
    matrix = _as_array(rho)
    return float(np.real(np.trace(matrix @ matrix)))


def describe_spectrum(rho: Operator, tol: Optional[Tolerance] = None) -> dict:
    """Spectrum, purity and physicality summary used by ``describe state``."""
    tol = resolve_tolerance(tol)
    eigenvalues, _ = hermitian_eig(rho, tol)
    summary = {
        'dim': rho.side,
        'factors': list(rho.factors),
        'trace': float(np.real(rho.trace())),
        'purity': purity(rho),
        'eigenvalues': [float(e) for e in eigenvalues],
        'min_eigenvalue': float(eigenvalues[-1]),
        'rank': int(np.sum(eigenvalues > tol.absolute)),
    }
    logger.debug(f"Spectrum of {rho.side}x{rho.side} state: {summary['eigenvalues']}")
    return summary
