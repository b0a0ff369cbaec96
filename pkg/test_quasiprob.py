#!/usr/bin/env python3
"""
Tests for frame coefficients, reconstruction, the causal and two-space
probability rules, Kirkwood-Dirac marginals and negativity.
"""

import os
import sys

import numpy as np
import pytest

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'app'))

from src.core.errors import DimensionMismatchError, IncompleteFrameError, OperatorFrameError, WrongFlavorError
from src.core.hilbert import fourier_basis, haar_random_pure, ket, random_density, random_effect
from src.core.models import Operator, StateVector, Tolerance
from src.frames.frames import builtin_frame, deform_frame
from src.quasiprob.quasiprob import (
    born_probability,
    kd_zero_for_orthogonal,
    marginals_kd,
    negativity,
    negativity_parts,
    predict_probability,
    quasi_distribution,
    reconstruct_state,
    reconstruction_negativity,
    two_space_probability,
)

TOL = Tolerance(absolute=1e-9, relative=1e-9)

COMPLETE_FRAMES = [
    ('matrix-unit', 2), ('matrix-unit', 3),
    ('kd', 2), ('kd', 4),
    ('phase-point', 3), ('phase-point', 5),
    ('sic2', 2),
]


def negative_kd_state():
    return StateVector(amplitudes=[np.sin(np.pi / 8), -np.cos(np.pi / 8)]).projector()


@pytest.mark.parametrize("name,d", [
    ('matrix-unit', 2), ('matrix-unit', 3), ('matrix-unit', 5),
    ('kd', 2), ('kd', 3), ('kd', 5),
    ('phase-point', 3), ('phase-point', 5),
    ('sic2', 2),
])
def test_reconstruction_recovers_haar_states(name, d):
    frame = builtin_frame(name, d, TOL)
    for seed in range(50):
        rho = haar_random_pure(d, seed=seed).projector()
        rebuilt = reconstruct_state(frame, quasi_distribution(frame, rho, TOL), TOL)
        assert np.linalg.norm(rebuilt.entries - rho.entries) <= 1e-9


@pytest.mark.parametrize("name,d", COMPLETE_FRAMES)
def test_reconstruction_recovers_mixed_state(name, d):
    frame = builtin_frame(name, d, TOL)
    for seed in range(3):
        rho = random_density(d, seed=seed)
        rebuilt = reconstruct_state(frame, quasi_distribution(frame, rho, TOL), TOL)
        assert np.allclose(rebuilt.entries, rho.entries, atol=1e-9)


def test_reconstruction_through_deformed_frame():
    frame = deform_frame(builtin_frame('kd', 3), seed=4, tol=TOL)
    rho = haar_random_pure(3, seed=8).projector()
    rebuilt = reconstruct_state(frame, quasi_distribution(frame, rho, TOL), TOL)
    assert np.allclose(rebuilt.entries, rho.entries, atol=1e-8)


def test_reconstruction_refuses_incomplete_frame():
    frame = builtin_frame('projective', 3)
    q = quasi_distribution(frame, random_density(3, seed=1))
    with pytest.raises(IncompleteFrameError) as excinfo:
        reconstruct_state(frame, q)
    assert excinfo.value.rank == 3


@pytest.mark.parametrize("name,d", COMPLETE_FRAMES)
def test_causal_rule_matches_born(name, d):
    frame = builtin_frame(name, d, TOL)
    for seed in range(3):
        rho = random_density(d, seed=10 + seed)
        effect = random_effect(d, seed=20 + seed)
        predicted = predict_probability(frame, rho, effect, TOL)
        assert abs(predicted - born_probability(rho, effect)) < 1e-9
        assert abs(predicted.imag) < 1e-9


@pytest.mark.parametrize("name,d", COMPLETE_FRAMES)
def test_two_space_rule_matches_born(name, d):
    frame = builtin_frame(name, d, TOL)
    rho = random_density(d, seed=31)
    effect = random_effect(d, seed=32)
    assert abs(two_space_probability(frame, rho, effect) - born_probability(rho, effect)) < 1e-9


def test_predict_probability_rejects_incomplete_frame():
    with pytest.raises(IncompleteFrameError):
        predict_probability(builtin_frame('projective', 2), random_density(2, seed=1), random_effect(2, seed=2))


def test_predict_probability_rejects_bad_effect():
    with pytest.raises(OperatorFrameError):
        predict_probability(builtin_frame('kd', 2), random_density(2, seed=1), Operator.from_matrix(2 * np.eye(2)))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        quasi_distribution(builtin_frame('kd', 3), random_density(2, seed=1))


@pytest.mark.parametrize("name,d", [('kd', 2), ('kd', 3), ('phase-point', 3), ('sic2', 2)])
def test_distribution_totals_one(name, d):
    q = quasi_distribution(builtin_frame(name, d), random_density(d, seed=5))
    assert np.isclose(q.total, 1.0)


def test_kd_of_basis_state():
    q = quasi_distribution(builtin_frame('kd', 2), ket(2, 0).projector())
    assert np.isclose(q.value((0, 0)), 0.5)
    assert np.isclose(q.value((0, 1)), 0.5)
    assert np.isclose(q.value((1, 0)), 0.0)


def test_kd_negative_value_for_qubit():
    q = quasi_distribution(builtin_frame('kd', 2), negative_kd_state())
    assert abs(q.values.real.min() - (-0.10355)) < 1e-3
    assert negativity_parts(q).negative_real > 0.1


@pytest.mark.parametrize("d", [2, 3, 5])
def test_kd_marginals_are_born_probabilities(d):
    frame = builtin_frame('kd', d, TOL)
    rho = random_density(d, seed=d)
    over_a, over_b = marginals_kd(quasi_distribution(frame, rho, TOL), TOL)
    assert np.allclose(over_a, np.real(np.diag(rho.entries)))
    expected_b = [np.real(f.amplitudes.conj() @ rho.entries @ f.amplitudes) for f in fourier_basis(d)]
    assert np.allclose(over_b, expected_b)


def test_kd_marginals_need_kd_distribution():
    q = quasi_distribution(builtin_frame('phase-point', 3), random_density(3, seed=1))
    with pytest.raises(WrongFlavorError):
        marginals_kd(q)


def test_kd_zero_for_orthogonal_state():
    pairs, worst = kd_zero_for_orthogonal(builtin_frame('kd', 2), ket(2, 0), TOL)
    assert sorted(pairs) == [(1, 0), (1, 1)]
    assert worst < 1e-12


def test_wigner_of_stabilizer_state_is_nonnegative():
    q = quasi_distribution(builtin_frame('phase-point', 3), ket(3, 0).projector())
    assert negativity(q) == 0.0
    assert np.isclose(q.total, 1.0)


def test_wigner_negativity_of_strange_state():
    strange = StateVector(amplitudes=np.array([0.0, 1.0, -1.0]) / np.sqrt(2)).projector()
    q = quasi_distribution(builtin_frame('phase-point', 3), strange)
    assert np.isclose(q.value((0, 0)).real, -1 / 3)
    assert negativity(q) >= 1 / 3 - 1e-12


def test_negativity_counts_imaginary_parts():
    q = quasi_distribution(builtin_frame('kd', 3), haar_random_pure(3, seed=2).projector())
    parts = negativity_parts(q)
    assert parts.imaginary > 0
    assert np.isclose(negativity(q), parts.negative_real + parts.imaginary)


@pytest.mark.parametrize("name,d,expected", [
    ('phase-point', 3, -1.0),
    ('sic2', 2, -1.0),
    ('projective', 3, 0.0),
])
def test_reconstruction_negativity(name, d, expected):
    summary = reconstruction_negativity(builtin_frame(name, d, TOL), TOL)
    assert np.isclose(summary.min_eigenvalue, expected, atol=1e-9)


def test_reconstruction_negativity_skips_non_hermitian_duals():
    summary = reconstruction_negativity(builtin_frame('kd', 2, TOL), TOL)
    assert summary.min_eigenvalue is None
    assert len(summary.non_hermitian_duals) == 4


def test_distribution_dataframe_layout():
    q = quasi_distribution(builtin_frame('kd', 2), ket(2, 0).projector())
    df = q.to_dataframe()
    assert list(df.columns) == ['i0', 'i1', 're', 'im']
    assert len(df) == 4


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
