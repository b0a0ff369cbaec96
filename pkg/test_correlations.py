#!/usr/bin/env python3
"""
Tests for the SWAP identities, the partial transpose of the maximally
entangled state and the conjugate-basis correlations.
"""

import os
import sys

import numpy as np
import pytest

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'app'))

from src.core.errors import MissingWeightsError, WrongFlavorError
from src.core.hilbert import computational_basis, fourier_basis, ket, random_basis, tensor
from src.core.models import Tolerance
from src.correlations.correlations import (
    conjugate_correlation_test,
    entangled_expansion,
    max_entangled,
    pt_min_eigenvalue,
    pt_spectrum,
    swap_operator,
    symmetric_projector,
    verify_fill_identity,
    verify_pt_swap,
    verify_swap_identity,
)
from src.frames.frames import builtin_frame, deform_frame

TOL = Tolerance(absolute=1e-9, relative=1e-9)


def test_swap_operator_exchanges_factors():
    swapped = swap_operator(3).entries @ np.kron(ket(3, 1).amplitudes, ket(3, 2).amplitudes)
    assert np.allclose(swapped, np.kron(ket(3, 2).amplitudes, ket(3, 1).amplitudes))
    assert swap_operator(3).factors == (3, 3)


def test_max_entangled_is_normalized():
    vector = max_entangled(4).amplitudes
    assert np.isclose(np.linalg.norm(vector), 1.0)
    assert np.isclose(vector[0], 0.5)
    assert np.isclose(vector[5], 0.5)


@pytest.mark.parametrize("name,d", [
    ('matrix-unit', 2), ('matrix-unit', 4),
    ('kd', 2), ('kd', 3),
    ('phase-point', 3), ('phase-point', 5),
    ('sic2', 2),
])
def test_swap_identity_holds_for_complete_frames(name, d):
    report = verify_swap_identity(builtin_frame(name, d, TOL), TOL)
    assert report.residual < 1e-9
    assert report.swap_passed


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_swap_identity_survives_deformation(seed):
    frame = deform_frame(builtin_frame('matrix-unit', 3), seed=seed, tol=TOL)
    assert verify_swap_identity(frame, TOL).residual < 1e-8


def test_swap_identity_reports_rank_for_incomplete_frame():
    report = verify_swap_identity(builtin_frame('projective', 3, TOL), TOL)
    assert report.residual is None
    assert report.rank == 3
    assert report.target_rank == 9
    assert report.swap_passed is None


@pytest.mark.parametrize("name,d", [('kd', 2), ('kd', 3), ('phase-point', 3), ('sic2', 2)])
def test_fill_identity(name, d):
    report = verify_fill_identity(builtin_frame(name, d, TOL), TOL)
    assert report.fill_residual < 1e-9
    assert report.symmetric_projector_residual < 1e-12
    assert report.idempotence_residual < 1e-12
    assert report.symmetric_rank == d * (d + 1) // 2


def test_fill_identity_needs_elements_summing_to_identity():
    with pytest.raises(WrongFlavorError):
        verify_fill_identity(builtin_frame('matrix-unit', 2, TOL), TOL)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_symmetric_projector_rank(d):
    projector = symmetric_projector(d)
    assert np.allclose(projector @ projector, projector)
    assert np.isclose(np.trace(projector).real, d * (d + 1) / 2)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_partial_transpose_of_entangled_state(d):
    assert verify_pt_swap(d) < 1e-12
    assert np.isclose(pt_min_eigenvalue(d), -1 / d)
    spectrum = pt_spectrum(d)
    assert np.sum(np.isclose(spectrum, -1 / d)) == d * (d - 1) // 2
    assert np.sum(np.isclose(spectrum, 1 / d)) == d * (d + 1) // 2


@pytest.mark.parametrize("name,d", [('matrix-unit', 2), ('matrix-unit', 3), ('kd', 3), ('phase-point', 3)])
def test_entangled_state_expansion(name, d):
    assert entangled_expansion(builtin_frame(name, d, TOL), TOL) < 1e-9


def test_entangled_expansion_needs_weights():
    with pytest.raises(MissingWeightsError):
        entangled_expansion(builtin_frame('sic2', 2, TOL), TOL)


@pytest.mark.parametrize("d,basis", [
    (2, computational_basis(2)),
    (3, fourier_basis(3)),
    (4, random_basis(4, seed=17)),
])
def test_conjugate_outcomes_always_agree(d, basis):
    table = conjugate_correlation_test(d, basis, TOL)
    assert table.off_diagonal_mass < 1e-12
    assert table.diagonal_deviation < 1e-12
    assert np.isclose(table.table.sum(), 1.0)


def test_conjugate_test_rejects_non_basis():
    with pytest.raises(WrongFlavorError):
        conjugate_correlation_test(2, [ket(2, 0), ket(2, 0)], TOL)


def test_swap_is_product_invariant():
    a, b = ket(2, 0).projector(), fourier_basis(2)[1].projector()
    swap = swap_operator(2).entries
    assert np.allclose(swap @ tensor(a, b).entries @ swap, tensor(b, a).entries)


def test_conjugate_table_dataframe():
    df = conjugate_correlation_test(3, fourier_basis(3), TOL).to_dataframe()
    assert df.shape == (3, 3)
    assert list(df.columns) == ['l0', 'l1', 'l2']
    assert df.index.name == 'k'
    assert np.allclose(np.diag(df.to_numpy()), 1 / 3)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
