"""
Numerical verification suite.

Every check tag in ``CHECKS`` has a function here that evaluates the
corresponding identity over the requested dimensions and returns one
``CheckResult`` per frame, state family or dimension it touched. Checks
that have no applicable input for the requested dimensions are reported as
skipped, never as passed.
"""

import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional

import numpy as np
from loguru import logger

from ..core.constants import BUILTIN_FRAMES, canonical_frame_name, is_odd_prime
from ..core.errors import UnknownSelectorError
from ..core.hilbert import (
    computational_basis, fourier_basis, haar_random_pure, hermitian_eig, ket, partial_trace,
    partial_transpose, random_basis, random_density, random_effect, random_hermitian, tensor,
    weyl_operator,
)
from ..core.models import DensityOperator, Operator, StateVector, Tolerance, resolve_tolerance
from ..correlations.correlations import (
    conjugate_correlation_test, entangled_expansion, pt_min_eigenvalue, swap_operator,
    verify_fill_identity, verify_pt_swap, verify_swap_identity,
)
from ..frames.conditions import biorthogonality_matrix, check_conditions, no_go_certificate
from ..frames.frames import builtin_frame, deform_frame, kd_closed_form_residual, matrix_unit_frame
from ..frames.models import FrameFlavor, OperatorFrame
from ..protocols.cloning import clone_map, clone_report, discrepancy_state, discrepancy_table, joint_ideal_statistics
from ..protocols.teleportation import teleport_all, verify_bellm_expansion
from ..quasiprob.quasiprob import (
    born_probability, kd_zero_for_orthogonal, marginals_kd, predict_probability, quasi_distribution,
    reconstruct_state, two_space_probability,
)
from ..quasiprob.tomography import error_scaling, linear_inversion, outcome_probabilities
from .constants import CHECKS, TOMOGRAPHY_SHOTS, TOMOGRAPHY_SLOPE, TRIALS, resolve_selector
from .models import CheckResult, RunReport, SuiteContext

# Import configuration
sys.path.append(str(Path(__file__).parent.parent.parent))
from config import config

# sin(pi/8)|0> - cos(pi/8)|1> has a negative Kirkwood-Dirac value against |0>, |+>
KD_NEGATIVE_AMPLITUDES = (np.sin(np.pi / 8), -np.cos(np.pi / 8))
KD_NEGATIVE_VALUE = -0.10355
KD_NEGATIVE_WINDOW = 1e-3


def _seeds(ctx: SuiteContext, d: int, count: int, stream: int = 0) -> List[int]:
    base = ctx.seed * 1_000_003 + d * 10_007 + stream * 1_009
    return [base + k for k in range(count)]


def _result(tag: str, name: str, residual: float, limit: float, **details) -> CheckResult:
    residual = float(residual)
    return CheckResult(tag=tag, name=name, passed=bool(residual <= limit), residual=residual, details=details)


def _skipped(tag: str, reason: str) -> List[CheckResult]:
    return [CheckResult(tag=tag, name='not-applicable', passed=True, skipped=True, details={'reason': reason})]


def _frame_names(ctx: SuiteContext, d: int) -> List[str]:
    names = [canonical_frame_name(ctx.frame)] if ctx.frame else list(BUILTIN_FRAMES)
    applicable = []
    for name in names:
        if name == 'phase-point' and not is_odd_prime(d):
            continue
        if name == 'sic2' and d != 2:
            continue
        applicable.append(name)
    return applicable


def _frames(ctx: SuiteContext, d: int, complete: bool = False) -> Iterator[OperatorFrame]:
    for name in _frame_names(ctx, d):
        frame = builtin_frame(name, d, ctx.tol)
        if complete and frame.rank != d * d:
            continue
        yield frame


def _embedded(d: int, amplitudes) -> StateVector:
    vector = np.zeros(d, dtype=np.complex128)
    vector[:len(amplitudes)] = amplitudes
    return StateVector(amplitudes=vector)


def _states(ctx: SuiteContext, d: int, stream: int) -> List[DensityOperator]:
    """Alternating Haar-random pure and random mixed states."""
    states = []
    for k, seed in enumerate(_seeds(ctx, d, TRIALS['states'], stream)):
        states.append(haar_random_pure(d, seed).projector() if k % 2 == 0 else random_density(d, seed))
    return states


def _pure_states(ctx: SuiteContext, d: int, stream: int) -> List[DensityOperator]:
    return [haar_random_pure(d, seed).projector() for seed in _seeds(ctx, d, TRIALS['states'], stream)]


# --- hilbert_core -----------------------------------------------------------

def check_core_tensor(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        worst = 0.0
        for seed in _seeds(ctx, d, TRIALS['states'], 1):
            a, b = random_hermitian(d, seed), random_density(d, seed + 1)
            product = tensor(a, b)
            worst = max(
                worst,
                abs(product.trace() - a.trace() * b.trace()),
                float(np.linalg.norm(partial_trace(product, keep=1).entries - b.trace() * a.entries)),
                float(np.linalg.norm(partial_trace(product, keep=2).entries - a.trace() * b.entries)),
            )
        results.append(_result('core-tensor', f'd{d}', worst, ctx.tol.absolute))
    return results


def check_core_partial_transpose(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        worst = 0.0
        for seed in _seeds(ctx, d, TRIALS['states'], 2):
            x = Operator(factors=(d, d), entries=random_density(d * d, seed).entries)
            once = partial_transpose(x, 2)
            worst = max(
                worst,
                float(np.linalg.norm(partial_transpose(once, 2).entries - x.entries)),
                float(np.linalg.norm(partial_trace(once, keep=1).entries - partial_trace(x, keep=1).entries)),
                abs(once.trace() - x.trace()),
            )
        results.append(_result('core-partial-transpose', f'd{d}', worst, ctx.tol.absolute))
    return results


def check_core_eig(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        worst = 0.0
        for seed in _seeds(ctx, d, TRIALS['states'], 3):
            a = random_hermitian(d, seed)
            values, vectors = hermitian_eig(a, ctx.tol)
            rebuilt = sum(value * np.outer(v.amplitudes, v.amplitudes.conj()) for value, v in zip(values, vectors))
            descending = float(np.max(np.diff(values), initial=0.0))
            worst = max(worst, float(np.linalg.norm(rebuilt - a.entries)), descending)
        results.append(_result('core-eig', f'd{d}', worst, ctx.tol.absolute))
    return results


def check_core_weyl(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        omega = np.exp(2j * np.pi / d)
        worst = 0.0
        for q in range(d):
            for p in range(d):
                w = weyl_operator(d, q, p).entries
                worst = max(worst, float(np.linalg.norm(w @ w.conj().T - np.eye(d))))
                for q2, p2 in ((1, 0), (0, 1), (d - 1, d - 1)):
                    composed = w @ weyl_operator(d, q2, p2).entries
                    law = omega ** (p * q2) * weyl_operator(d, q + q2, p + p2).entries
                    worst = max(worst, float(np.linalg.norm(composed - law)))
        results.append(_result('core-weyl', f'd{d}', worst, ctx.tol.absolute))
    return results


# --- frames -----------------------------------------------------------------

def check_eq_nogo(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        frames = list(_frames(ctx, d))
        frames += [deform_frame(matrix_unit_frame(d), seed, real=bool(k % 2), tol=ctx.tol)
                   for k, seed in enumerate(_seeds(ctx, d, TRIALS['deformations'], 4))]
        worst_count, verdicts = 0, {}
        for frame in frames:
            report = check_conditions(frame, ctx.tol)
            worst_count = max(worst_count, report.satisfied_count)
            if report.satisfied_count == 3:
                logger.error(f"{frame.frame_id} reported all three conditions")
                continue
            certificate = no_go_certificate(frame, ctx.tol)
            if frame.family != 'deformed':
                verdicts[frame.frame_id] = {
                    'verdicts': list(report.verdicts),
                    'primary_witness': certificate.primary.kind.value,
                }
        results.append(CheckResult(
            tag='eq-nogo',
            name=f'd{d}',
            passed=worst_count <= 2,
            details={'frames_checked': len(frames), 'max_satisfied': worst_count, 'builtins': verdicts},
        ))
    return results


def check_eq_duals(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        for frame in _frames(ctx, d, complete=True):
            biorthogonality = float(np.max(np.abs(biorthogonality_matrix(frame) - np.eye(frame.size))))
            details = {'biorthogonality': biorthogonality}
            worst = biorthogonality
            if frame.family == 'kd':
                details['closed_form'] = kd_closed_form_residual(frame)
                worst = max(worst, details['closed_form'])
            if frame.family in ('phase-point', 'sic2'):
                minimum = min(dual.min_eigenvalue() for dual in frame.duals)
                details['min_dual_eigenvalue'] = minimum
                worst = max(worst, abs(minimum + 1.0))
            results.append(_result('eq-duals', frame.frame_id, worst, ctx.tol.absolute, **details))
    return results or _skipped('eq-duals', 'no complete frame for the requested dimensions')


# --- quasiprob --------------------------------------------------------------

def check_eq_reconstruct(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        states = _pure_states(ctx, d, 5)
        for frame in _frames(ctx, d, complete=True):
            worst = max(
                float(np.linalg.norm(reconstruct_state(frame, quasi_distribution(frame, rho, ctx.tol), ctx.tol).entries
                                     - rho.entries))
                for rho in states
            )
            results.append(_result('eq-reconstruct', frame.frame_id, worst, ctx.tol.absolute, states=len(states)))
    return results or _skipped('eq-reconstruct', 'no complete frame for the requested dimensions')


def _triples(ctx: SuiteContext, d: int, stream: int):
    return [(random_density(d, seed), random_effect(d, seed + 7))
            for seed in _seeds(ctx, d, TRIALS['triples'], stream)]


def check_eq_causality(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        triples = _triples(ctx, d, 6)
        for frame in _frames(ctx, d, complete=True):
            worst = max(abs(predict_probability(frame, rho, effect, ctx.tol) - born_probability(rho, effect))
                        for rho, effect in triples)
            results.append(_result('eq-causality', frame.frame_id, worst, ctx.tol.absolute, triples=len(triples)))
    return results or _skipped('eq-causality', 'no complete frame for the requested dimensions')


def check_eq_two_space(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        triples = _triples(ctx, d, 7)
        for frame in _frames(ctx, d, complete=True):
            worst = max(abs(two_space_probability(frame, rho, effect) - born_probability(rho, effect))
                        for rho, effect in triples)
            results.append(_result('eq-two-space', frame.frame_id, worst, ctx.tol.absolute, triples=len(triples)))
    return results or _skipped('eq-two-space', 'no complete frame for the requested dimensions')


def check_eq_kd_marginals(ctx: SuiteContext) -> List[CheckResult]:
    if ctx.frame and canonical_frame_name(ctx.frame) != 'kd':
        return _skipped('eq-kd-marginals', f"frame filter '{ctx.frame}' excludes the KD frame")
    results = []
    for d in ctx.dims:
        frame = builtin_frame('kd', d, ctx.tol)
        comp, fourier = computational_basis(d), fourier_basis(d)
        worst = 0.0
        for rho in _states(ctx, d, 8):
            over_a, over_b = marginals_kd(quasi_distribution(frame, rho, ctx.tol), ctx.tol)
            born_a = [born_probability(rho, v.projector()) for v in comp]
            born_b = [born_probability(rho, v.projector()) for v in fourier]
            worst = max(worst, float(np.max(np.abs(over_a - born_a))), float(np.max(np.abs(over_b - born_b))))

        _, zero_worst = kd_zero_for_orthogonal(frame, ket(d, 0), ctx.tol)
        details = {'orthogonal_zero': zero_worst}
        worst = max(worst, zero_worst)
        passed = worst <= ctx.tol.absolute
        if d == 2:
            witness = _embedded(d, KD_NEGATIVE_AMPLITUDES).projector()
            minimum = float(quasi_distribution(frame, witness, ctx.tol).values.real.min())
            details['negative_value'] = minimum
            passed = passed and abs(minimum - KD_NEGATIVE_VALUE) <= KD_NEGATIVE_WINDOW
        results.append(CheckResult(tag='eq-kd-marginals', name=frame.frame_id, passed=bool(passed),
                                   residual=worst, details=details))
    return results


def check_eq_tomography(ctx: SuiteContext) -> List[CheckResult]:
    if 2 not in ctx.dims:
        return _skipped('eq-tomography', 'the qubit SIC needs d=2')
    if ctx.frame and canonical_frame_name(ctx.frame) != 'sic2':
        return _skipped('eq-tomography', f"frame filter '{ctx.frame}' excludes the qubit SIC")
    frame = builtin_frame('sic2', 2, ctx.tol)
    rho = random_density(2, ctx.seed)
    exact = linear_inversion(frame, outcome_probabilities(frame, rho))
    exact_residual = float(np.linalg.norm(exact.entries - rho.entries))
    seeds = _seeds(ctx, 2, TRIALS['tomography_seeds'], 9)
    scaling = error_scaling(frame, rho, TOMOGRAPHY_SHOTS, seeds)
    min_dual = min(dual.min_eigenvalue() for dual in frame.duals)
    slope_ok = abs(scaling['slope'] - TOMOGRAPHY_SLOPE['target']) <= TOMOGRAPHY_SLOPE['window']
    return [
        _result('eq-tomography', 'exact-inversion', exact_residual, ctx.tol.absolute),
        CheckResult(
            tag='eq-tomography',
            name='error-scaling',
            passed=bool(slope_ok and min_dual < 0),
            residual=abs(scaling['slope'] - TOMOGRAPHY_SLOPE['target']),
            details={**scaling, 'seeds': len(seeds), 'min_dual_eigenvalue': min_dual},
        ),
    ]


# --- correlations -----------------------------------------------------------

def check_eq_swap(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        for frame in _frames(ctx, d, complete=True):
            report = verify_swap_identity(frame, ctx.tol)
            results.append(_result('eq-swap', frame.frame_id, report.residual, ctx.tol.absolute))
        if ctx.frame is None or canonical_frame_name(ctx.frame) == 'matrix-unit':
            worst = 0.0
            for seed in _seeds(ctx, d, TRIALS['swap_deformations'], 10):
                report = verify_swap_identity(deform_frame(matrix_unit_frame(d), seed, tol=ctx.tol), ctx.tol)
                worst = max(worst, report.residual)
            results.append(_result('eq-swap', f'deformed-matrix-unit-d{d}', worst, ctx.tol.absolute,
                                   deformations=TRIALS['swap_deformations']))
    return results or _skipped('eq-swap', 'no complete frame for the requested dimensions')


def check_eq_fill(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        for frame in _frames(ctx, d, complete=True):
            if frame.flavor != FrameFlavor.POVM:
                continue
            report = verify_fill_identity(frame, ctx.tol)
            worst = max(report.fill_residual, report.symmetric_projector_residual, report.idempotence_residual)
            rank_ok = report.symmetric_rank == d * (d + 1) // 2
            results.append(CheckResult(
                tag='eq-fill', name=frame.frame_id, passed=bool(worst <= ctx.tol.absolute and rank_ok),
                residual=worst, details=report.to_json_dict(),
            ))
    return results or _skipped('eq-fill', 'no complete POVM frame for the requested dimensions')


def check_eq_pt(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        minimum = pt_min_eigenvalue(d)
        residual = max(verify_pt_swap(d), abs(minimum + 1.0 / d))
        results.append(_result('eq-pt', f'd{d}', residual, ctx.tol.absolute, min_eigenvalue=minimum))
    return results


def check_eq_entangled_expansion(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        for frame in _frames(ctx, d, complete=True):
            if not frame.has_weights:
                continue
            results.append(_result('eq-entangled-expansion', frame.frame_id,
                                   entangled_expansion(frame, ctx.tol), ctx.tol.absolute))
    return results or _skipped('eq-entangled-expansion', 'no complete orthogonal frame for the requested dimensions')


def check_eq_conjugate(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        bases = {'computational': computational_basis(d), 'fourier': fourier_basis(d)}
        for k, seed in enumerate(_seeds(ctx, d, TRIALS['states'], 11)):
            bases[f'random-{k}'] = random_basis(d, seed)
        worst = 0.0
        for basis in bases.values():
            table = conjugate_correlation_test(d, basis, ctx.tol)
            worst = max(worst, table.off_diagonal_mass, table.diagonal_deviation)
        results.append(_result('eq-conjugate', f'd{d}', worst, ctx.tol.absolute, bases=len(bases)))
    return results


# --- protocols --------------------------------------------------------------

def check_eq_bellm(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        if not is_odd_prime(d):
            continue
        report = verify_bellm_expansion(d, ctx.tol)
        worst = max(report.worst_residual, report.completeness_residual, report.rank_one_defect)
        results.append(CheckResult(
            tag='eq-bellm', name=f'd{d}', passed=bool(worst <= ctx.tol.absolute and report.matching_is_identity),
            residual=worst, details={'matching_is_identity': report.matching_is_identity},
        ))
    return results or _skipped('eq-bellm', 'phase-point frames need an odd prime dimension')


def check_eq_teleport(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        worst = 0.0
        for seed in _seeds(ctx, d, TRIALS['protocol_inputs'], 12):
            outcomes = teleport_all(haar_random_pure(d, seed).projector(), d, ctx.tol)
            total = sum(o.probability for o in outcomes)
            worst = max(worst, abs(total - 1.0))
            for o in outcomes:
                worst = max(worst, abs(o.probability - 1.0 / d ** 2), abs(o.fidelity_after_correction - 1.0))
                if o.path_disagreement is not None:
                    worst = max(worst, o.path_disagreement)
        results.append(_result('eq-teleport', f'd{d}', worst, ctx.tol.absolute,
                               frame_sum_compared=is_odd_prime(d)))
    return results


def check_eq_clone(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        target = (d + 3) / (2 * (d + 1))
        worst = 0.0
        for seed in _seeds(ctx, d, TRIALS['protocol_inputs'], 13):
            report = clone_report(haar_random_pure(d, seed).projector(), tol=ctx.tol)
            worst = max(
                worst,
                abs(report.clone_fidelity - target),
                abs(report.output_trace - 1.0),
                max(0.0, -report.output_pair.min_eigenvalue()),
                report.swap_symmetry_residual,
                report.decomposition_residual,
            )
        mixed = clone_map(DensityOperator.from_matrix(np.eye(d) / d), ctx.tol).entries
        uniform = (swap_operator(d).entries + np.eye(d * d)) / (d * (d + 1))
        worst = max(worst, float(np.linalg.norm(mixed - uniform)))
        results.append(_result('eq-clone', f'd{d}', worst, ctx.tol.absolute, marginal_fidelity=target))
    return results


def check_eq_ideal_copy(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        states = _states(ctx, d, 14)
        worst = 0.0
        for rho in states:
            report = clone_report(rho, tol=ctx.tol)
            worst = max(worst, report.ideal_marginal_residual, report.ordering_residual,
                        abs(report.ideal_weight - 1.0 / d))
        results.append(_result('eq-ideal-copy', f'd{d}', worst, ctx.tol.absolute, states=len(states)))
        for frame in _frames(ctx, d, complete=True):
            expansion = max(clone_report(rho, frame, ctx.tol).expansion_residual for rho in states[:4])
            results.append(_result('eq-ideal-copy', frame.frame_id, expansion, ctx.tol.absolute))
    return results


def _unit_trace_duals(frame: OperatorFrame, tol: Tolerance) -> bool:
    return all(abs(dual.trace() - 1.0) <= tol.absolute for dual in frame.duals)


def check_eq_discrepancy(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        states = _states(ctx, d, 15)[:4]
        for frame in _frames(ctx, d):
            table = discrepancy_table(frame, ctx.tol)
            complete = frame.rank == d * d
            details = {'max_element_discrepancy': table.max_norm, 'complete': complete}
            worst = 0.0
            if _unit_trace_duals(frame, ctx.tol):
                worst = max(abs(discrepancy_state(frame, k, rho).trace())
                            for rho in states for k in range(frame.size))
                details['max_trace'] = worst
            # Element discrepancies vanish for projective frames and never for complete ones
            pattern_ok = table.all_zero != complete
            results.append(CheckResult(
                tag='eq-discrepancy', name=frame.frame_id,
                passed=bool(worst <= ctx.tol.absolute and pattern_ok),
                residual=worst, details=details,
            ))
    return results or _skipped('eq-discrepancy', 'no frame for the requested dimensions')


def check_eq_joint_ideal(ctx: SuiteContext) -> List[CheckResult]:
    results = []
    for d in ctx.dims:
        triples = [(random_effect(d, seed), random_effect(d, seed + 3), random_density(d, seed + 5))
                   for seed in _seeds(ctx, d, TRIALS['triples'], 16)]
        plus = _embedded(d, (1 / np.sqrt(2), 1 / np.sqrt(2))).projector()
        triples.append((plus, ket(d, 0).projector(), _embedded(d, KD_NEGATIVE_AMPLITUDES).projector()))
        for frame in _frames(ctx, d, complete=True):
            worst, lowest = 0.0, np.inf
            for e1, e2, rho in triples:
                frame_sum, closed = joint_ideal_statistics(e1, e2, rho, frame, ctx.tol)
                worst = max(worst, abs(frame_sum - closed))
                lowest = min(lowest, closed)
            results.append(CheckResult(
                tag='eq-joint-ideal', name=frame.frame_id,
                passed=bool(worst <= ctx.tol.absolute and lowest < 0),
                residual=worst, details={'lowest_value': float(lowest), 'triples': len(triples)},
            ))
    return results or _skipped('eq-joint-ideal', 'no complete frame for the requested dimensions')


CHECK_FUNCTIONS: Dict[str, Callable[[SuiteContext], List[CheckResult]]] = {
    'core-tensor': check_core_tensor,
    'core-partial-transpose': check_core_partial_transpose,
    'core-eig': check_core_eig,
    'core-weyl': check_core_weyl,
    'eq-nogo': check_eq_nogo,
    'eq-duals': check_eq_duals,
    'eq-reconstruct': check_eq_reconstruct,
    'eq-causality': check_eq_causality,
    'eq-two-space': check_eq_two_space,
    'eq-kd-marginals': check_eq_kd_marginals,
    'eq-tomography': check_eq_tomography,
    'eq-swap': check_eq_swap,
    'eq-fill': check_eq_fill,
    'eq-pt': check_eq_pt,
    'eq-entangled-expansion': check_eq_entangled_expansion,
    'eq-conjugate': check_eq_conjugate,
    'eq-bellm': check_eq_bellm,
    'eq-teleport': check_eq_teleport,
    'eq-clone': check_eq_clone,
    'eq-ideal-copy': check_eq_ideal_copy,
    'eq-discrepancy': check_eq_discrepancy,
    'eq-joint-ideal': check_eq_joint_ideal,
}


def _run_check(tag: str, ctx: SuiteContext) -> List[CheckResult]:
    started = time.perf_counter()
    results = CHECK_FUNCTIONS[tag](ctx)
    elapsed = time.perf_counter() - started
    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.warning(f"{tag} failed for {', '.join(failed)} ({elapsed:.2f}s)")
    else:
        logger.success(f"{tag} passed ({len(results)} results, {elapsed:.2f}s)")
    return results


def run_suite(selector: str, dims: List[int], frame: Optional[str] = None,
              tol: Optional[Tolerance] = None, seed: Optional[int] = None) -> RunReport:
    """
    Run every check named by ``selector`` and aggregate the results.

    Parameters
    ----------
    selector : str
        'all', a module name such as 'correlations', or a check tag such as 'eq-swap'.
    dims : list of int
        Dimensions to check.
    frame : str, optional
        Restrict frame-based checks to one builtin frame.
    tol : Tolerance, optional
        Tolerance for every residual (configured default if omitted).
    seed : int, optional
        Base seed for random inputs (OPFRAME_SEED if omitted).

    Returns
    -------
    RunReport
        ``results['checks']`` sorted by tag, plus pass/fail counts.

    Raises
    ------
    UnknownSelectorError
        If the selector names no module and no tag.
    """
    started = time.perf_counter()
    tags = resolve_selector(selector)
    if tags is None:
        raise UnknownSelectorError(selector, ['all'] + sorted(CHECKS))
    if frame is not None:
        canonical_frame_name(frame)
    tol = resolve_tolerance(tol)
    seed = config.default_seed if seed is None else seed
    ctx = SuiteContext(dims=dims, frame=frame, tol=tol, seed=seed)

    logger.info(f"Running {len(tags)} checks over d={ctx.dims} with {config.max_workers} worker(s)")
    if config.max_workers > 1:
        with ThreadPoolExecutor(max_workers=config.max_workers) as executor:
            outcomes = list(executor.map(lambda tag: _run_check(tag, ctx), tags))
    else:
        outcomes = [_run_check(tag, ctx) for tag in tags]

    checks = sorted((result for batch in outcomes for result in batch), key=lambda r: r.sort_key)
    failed = sum(1 for r in checks if not r.passed and not r.skipped)
    results = {
        'checks': [r.model_dump(mode='json') for r in checks],
        'summary': {
            'total': len(checks),
            'passed': sum(1 for r in checks if r.passed and not r.skipped),
            'failed': failed,
            'skipped': sum(1 for r in checks if r.skipped),
        },
    }
    return RunReport(
        command='verify',
        parameters={'selector': selector, 'dims': ctx.dims, 'frame': frame},
        results=results,
        tolerance_used=tol,
        seed=seed,
        wall_time_ms=int((time.perf_counter() - started) * 1000),
    )
