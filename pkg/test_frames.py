#!/usr/bin/env python3
"""
Tests for frame construction, pseudo-inverse duals, the three condition
verdicts and the no-go certificate.
"""

import os
import sys

import numpy as np
import pytest

# Add the app directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'app'))

from src.core.errors import (
    FrameConstructionError,
    InvalidIndexError,
    RankDeficientFrameError,
    WrongFlavorError,
)
from src.core.hilbert import computational_basis, fourier_basis, ket, random_basis, random_density
from src.core.models import Operator, Tolerance
from src.frames.conditions import biorthogonality_matrix, check_conditions, no_go_certificate
from src.frames.frames import (
    builtin_frame,
    deform_frame,
    dual_frame,
    kd_closed_form_residual,
    kd_frame,
    projective_frame,
    shift_position,
)
from src.frames.models import FrameFlavor, IndexScheme, OperatorFrame, WitnessKind
from src.quasiprob.quasiprob import quasi_distribution, reconstruct_state

TOL = Tolerance(absolute=1e-9, relative=1e-9)


@pytest.mark.parametrize("name,d,verdicts", [
    ('projective', 2, (True, True, False)),
    ('projective', 4, (True, True, False)),
    ('matrix-unit', 2, (False, True, True)),
    ('matrix-unit', 3, (False, True, True)),
    ('kd', 2, (False, True, True)),
    ('kd', 3, (False, True, True)),
    ('phase-point', 3, (False, True, True)),
    ('phase-point', 5, (False, True, True)),
    ('sic2', 2, (True, False, True)),
])
def test_builtin_verdicts(name, d, verdicts):
    report = check_conditions(builtin_frame(name, d, TOL), TOL)
    assert report.verdicts == verdicts
    assert report.satisfied_count == 2


@pytest.mark.parametrize("name,d", [('phase-point', 3), ('phase-point', 5), ('sic2', 2), ('kd', 3)])
def test_duals_are_biorthogonal(name, d):
    frame = builtin_frame(name, d, TOL)
    assert np.allclose(biorthogonality_matrix(frame), np.eye(frame.size), atol=1e-9)


def test_frame_ids_and_sizes():
    assert builtin_frame('projective', 3).frame_id == 'projective-d3'
    assert builtin_frame('matrix-unit', 2).size == 4
    assert builtin_frame('phase-point', 3).frame_id == 'phase-point-d3'
    assert builtin_frame('sic2', 2).frame_id == 'sic2-d2'
    assert builtin_frame('kd', 3).index_scheme == IndexScheme.PAIR


@pytest.mark.parametrize("d", [2, 4, 9])
def test_phase_point_rejects_non_odd_prime(d):
    with pytest.raises(FrameConstructionError):
        builtin_frame('phase-point', d)


def test_sic_only_for_qubits():
    with pytest.raises(FrameConstructionError):
        builtin_frame('sic2', 3)


def test_unknown_frame_name():
    with pytest.raises(FrameConstructionError):
        builtin_frame('wavelet', 2)


def test_sic_overlap_and_dual_spectrum():
    frame = builtin_frame('sic2', 2, TOL)
    report = check_conditions(frame, TOL)
    assert np.isclose(report.orthogonality.max_overlap, 1 / 12)
    assert not frame.has_weights
    for dual in frame.duals:
        assert np.allclose(np.linalg.eigvalsh(dual.entries), [-1.0, 2.0])
        assert np.isclose(dual.trace(), 1.0)


@pytest.mark.parametrize("d", [3, 5])
def test_phase_point_weights_and_dual_spectrum(d):
    frame = builtin_frame('phase-point', d, TOL)
    assert frame.has_weights
    assert np.allclose(frame.weights, 1 / d)
    for dual in frame.duals:
        eigenvalues = np.linalg.eigvalsh(dual.entries)
        assert np.allclose(np.abs(eigenvalues), 1.0)
        assert np.isclose(dual.trace(), 1.0)


def test_kd_weights_and_closed_form_duals():
    frame = builtin_frame('kd', 3, TOL)
    assert frame.has_weights
    assert np.allclose(frame.weights, 1 / 3)
    assert kd_closed_form_residual(frame) < 1e-12
    assert np.allclose(frame.element_stack().sum(axis=0), np.eye(3))


def test_kd_rejects_orthogonal_pair():
    with pytest.raises(FrameConstructionError) as excinfo:
        kd_frame(computational_basis(2), computational_basis(2))
    assert excinfo.value.offending_pair == (0, 1)


def test_kd_with_random_bases():
    frame = kd_frame(random_basis(3, seed=1), random_basis(3, seed=2), TOL)
    assert frame.rank == 9
    assert check_conditions(frame, TOL).orthogonality.satisfied


def test_projective_frame_from_random_basis():
    frame = projective_frame(random_basis(3, seed=5), TOL)
    assert frame.rank == 3
    assert frame.flavor == FrameFlavor.POVM
    assert np.allclose(frame.weights, 1.0)


def test_projective_rejects_non_orthonormal():
    basis = [ket(2, 0), fourier_basis(2)[0]]
    with pytest.raises(FrameConstructionError):
        projective_frame(basis)


def test_rank_deficient_frame_has_no_dual():
    zero = ket(2, 0).projector()
    frame = OperatorFrame(
        frame_id='dependent',
        family='custom',
        dim=2,
        elements=(zero, zero, ket(2, 1).projector()),
        labels=((0,), (1,), (2,)),
        index_scheme=IndexScheme.SINGLE,
        flavor=FrameFlavor.GENERIC,
    )
    with pytest.raises(RankDeficientFrameError):
        dual_frame(frame)


def test_overcomplete_frame_reconstructs():
    units = builtin_frame('matrix-unit', 2)
    extra = Operator.from_matrix(np.eye(2))
    frame = OperatorFrame(
        frame_id='overcomplete',
        family='custom',
        dim=2,
        elements=units.elements + (extra,),
        labels=units.labels + ((2, 2),),
        index_scheme=IndexScheme.PAIR,
        flavor=FrameFlavor.GENERIC,
    )
    frame = dual_frame(frame, TOL)
    assert frame.rank == 4
    rho = random_density(2, seed=3)
    rebuilt = reconstruct_state(frame, quasi_distribution(frame, rho, TOL), TOL)
    assert np.allclose(rebuilt.entries, rho.entries)


@pytest.mark.parametrize("real", [False, True])
def test_deformed_frame_keeps_completeness(real):
    frame = deform_frame(builtin_frame('matrix-unit', 2), seed=11, real=real, tol=TOL)
    assert frame.family == 'deformed'
    assert frame.rank == 4
    assert np.allclose(biorthogonality_matrix(frame), np.eye(4), atol=1e-8)


def test_povm_flavor_requires_positive_elements():
    with pytest.raises(ValueError):
        OperatorFrame(
            frame_id='bad-povm',
            family='custom',
            dim=2,
            elements=(Operator.from_matrix(np.diag([1.5, 0.5])), Operator.from_matrix(np.diag([-0.5, 0.5]))),
            labels=((0,), (1,)),
            index_scheme=IndexScheme.SINGLE,
            flavor=FrameFlavor.POVM,
        )


@pytest.mark.parametrize("name,d,kind", [
    ('projective', 3, WitnessKind.RANK_DEFICIT),
    ('phase-point', 3, WitnessKind.NON_POSITIVE_DUAL),
    ('sic2', 2, WitnessKind.NON_POSITIVE_DUAL),
    ('matrix-unit', 2, WitnessKind.NON_HERMITIAN_ELEMENT),
    ('kd', 2, WitnessKind.NON_HERMITIAN_ELEMENT),
])
def test_no_go_primary_witness(name, d, kind):
    certificate = no_go_certificate(builtin_frame(name, d, TOL), TOL)
    assert certificate.primary.kind == kind
    assert certificate.satisfied_count <= 2


def test_no_go_projective_rank_deficit_value():
    certificate = no_go_certificate(builtin_frame('projective', 3, TOL), TOL)
    assert certificate.primary.value == 6.0
    assert not certificate.complete


def test_no_go_dual_eigenvector_is_witness():
    certificate = no_go_certificate(builtin_frame('phase-point', 3, TOL), TOL)
    witness = certificate.primary
    assert np.isclose(witness.value, -1.0)
    vector = np.array([re + 1j * im for re, im in witness.eigenvector])
    frame = builtin_frame('phase-point', 3, TOL)
    dual = frame.duals[frame.position(witness.index)].entries
    assert np.isclose(np.real(vector.conj() @ dual @ vector), -1.0)


def test_sic_certificate_lists_overlap():
    certificate = no_go_certificate(builtin_frame('sic2', 2, TOL), TOL)
    kinds = [w.kind for w in certificate.witnesses]
    assert WitnessKind.OVERLAP in kinds


def test_position_accepts_labels_and_integers():
    frame = builtin_frame('phase-point', 3)
    assert frame.position((1, 2)) == 5
    assert frame.position(5) == 5
    with pytest.raises(InvalidIndexError):
        frame.position((3, 0))
    with pytest.raises(InvalidIndexError):
        frame.position(9)


def test_shift_position_wraps_mod_d():
    frame = builtin_frame('phase-point', 3)
    assert frame.labels[shift_position(frame, frame.position((2, 1)), (1, 2))] == (0, 0)
    with pytest.raises(WrongFlavorError):
        shift_position(builtin_frame('kd', 3), 0, (1, 1))


def test_frame_json_round_trip():
    frame = builtin_frame('kd', 2)
    rebuilt = OperatorFrame.from_json_dict(frame.to_json_dict())
    assert rebuilt.labels == frame.labels
    assert np.allclose(rebuilt.element_stack(), frame.element_stack())
    assert np.allclose(rebuilt.weights, frame.weights)




@pytest.mark.parametrize("document", [
    {'elements': []},
    {'frame_id': 'no-elements'},
    ['not', 'a', 'frame'],
])
def test_frame_json_needs_elements(document):
    with pytest.raises(FrameConstructionError):
        OperatorFrame.from_json_dict(document)


def test_frame_json_weights_must_be_pairs():
    document = builtin_frame('projective', 2).to_json_dict()
    document['weights'] = [[1.0], [1.0]]
    with pytest.raises(FrameConstructionError):
        OperatorFrame.from_json_dict(document)

if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
