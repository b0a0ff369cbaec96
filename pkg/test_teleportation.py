#!/usr/bin/env python3
"""
Tests for the generalized Bell basis, its phase-point expansion and exact
teleportation for every measurement outcome.
"""

import os
import sys

import numpy as np
import pytest

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'app'))

from src.core.errors import DimensionMismatchError, FrameConstructionError, InvalidIndexError
from src.core.hilbert import haar_random_pure, random_density
from src.core.models import Tolerance
from src.protocols.teleportation import (
    bell_basis,
    bell_labels,
    sample_teleportation,
    teleport,
    teleport_all,
    verify_bellm_expansion,
)

TOL = Tolerance(absolute=1e-9, relative=1e-9)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_bell_basis_is_orthonormal(d):
    basis = np.column_stack([v.amplitudes for v in bell_basis(d)])
    assert basis.shape == (d * d, d * d)
    assert np.allclose(basis.conj().T @ basis, np.eye(d * d))


@pytest.mark.parametrize("d", [3, 5])
def test_shifted_expansions_are_bell_projectors(d):
    report = verify_bellm_expansion(d, TOL)
    assert report.worst_residual < 1e-9
    assert report.completeness_residual < 1e-9
    assert report.rank_one_defect < 1e-9
    assert report.matching_is_identity
    assert len(report.matching) == d * d


def test_bell_expansion_needs_odd_prime():
    with pytest.raises(FrameConstructionError):
        verify_bellm_expansion(4)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_every_outcome_teleports_pure_state(d):
    rho = haar_random_pure(d, seed=d).projector()
    outcomes = teleport_all(rho, d, TOL)
    assert len(outcomes) == d * d
    assert np.isclose(sum(o.probability for o in outcomes), 1.0)
    for outcome in outcomes:
        assert np.isclose(outcome.probability, 1 / d ** 2)
        assert outcome.corrected_trace_distance < 1e-9
        assert np.isclose(outcome.fidelity_after_correction, 1.0)


@pytest.mark.parametrize("d", [3, 5])
def test_frame_sum_agrees_with_projection(d):
    rho = random_density(d, seed=12)
    for outcome in [(0, 0), (1, 2), (d - 1, d - 1)]:
        result = teleport(rho, d, outcome, TOL)
        assert result.frame_sum_applicable
        assert result.path_disagreement < 1e-9


@pytest.mark.parametrize("d", [2, 4])
def test_frame_sum_absent_without_phase_points(d):
    result = teleport(random_density(d, seed=1), d, (1, 1), TOL)
    assert not result.frame_sum_applicable
    assert result.path_disagreement is None
    assert result.corrected_trace_distance < 1e-9


def test_mixed_input_has_no_fidelity():
    result = teleport(random_density(3, seed=2), 3, (2, 1), TOL)
    assert result.fidelity_after_correction is None
    assert result.corrected_trace_distance < 1e-9


def test_uncorrected_remote_state_is_displaced():
    rho = haar_random_pure(3, seed=4).projector()
    result = teleport(rho, 3, (1, 0), TOL)
    distance = 0.5 * np.sum(np.abs(np.linalg.eigvalsh(result.conditional_remote.entries - rho.entries)))
    assert distance > 1e-3


@pytest.mark.parametrize("outcome", [(3, 0), (0, -1), (1,)])
def test_outcome_out_of_range(outcome):
    with pytest.raises(InvalidIndexError):
        teleport(random_density(3, seed=1), 3, outcome, TOL)


def test_dimension_must_match_input():
    with pytest.raises(DimensionMismatchError):
        teleport(random_density(2, seed=1), 3, (0, 0), TOL)


def test_sampled_outcome_is_seeded():
    rho = haar_random_pure(3, seed=5).projector()
    first = sample_teleportation(rho, 3, seed=9, tol=TOL)
    second = sample_teleportation(rho, 3, seed=9, tol=TOL)
    assert first.outcome_m == second.outcome_m
    assert tuple(first.outcome_m) in bell_labels(3)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
