#!/usr/bin/env python3
"""
Operator Frame Toolkit - Main Application Entry Point

Numerical checks and simulations for operator frames: quasi-probability
expansions, the SWAP identity, teleportation and optimal cloning.

Usage:
    python main.py verify all --dims 2,3          # Run every check
    python main.py verify eq-swap --frame matrix-unit --dim 4
    python main.py describe frame --builtin phase-point --dim 3
    python main.py qp dist --frame kd --dim 2 --state state.json --out dist.csv
    python main.py proto teleport --dim 3 --state psi.json --all-outcomes

Exit status: 0 when every check passes, 1 when a check fails, 2 for usage
and input errors.
"""

import sys
import os
import argparse
import time
from loguru import logger
from pydantic import ValidationError

# Add the src directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

# Import configuration
from config import config
from src.core.constants import BUILTIN_FRAMES
from src.core.errors import DimensionMismatchError, OperatorFrameError
from src.core.models import Tolerance
from src.core.hilbert import random_basis
from src.correlations.correlations import conjugate_correlation_test, pt_min_eigenvalue, pt_spectrum, \
    verify_fill_identity, verify_pt_swap, verify_swap_identity
from src.frames.frames import builtin_frame
from src.frames.models import FrameFlavor
from src.protocols.cloning import clone_report, discrepancy_table
from src.protocols.teleportation import sample_teleportation, teleport, teleport_all
from src.quasiprob.quasiprob import marginals_kd, negativity_parts, quasi_distribution
from src.quasiprob.tomography import simulate_tomography
from src.utils.common import export_dataframe_to_csv, load_state, render_json, resolve_output_path, \
    write_json_report
from src.verification.constants import MODULES
from src.verification.describe import describe, frame_summary
from src.verification.models import RunReport
from src.verification.suite import run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def setup_logging():
    """
    Configure loguru logging for the application using configuration values.

    Console output goes to stderr; stdout carries only JSON reports.
    """
    # Remove default logger
    logger.remove()

    # Get logging configuration
    log_config = config.get_logging_config()

    # Add console logger with custom format
    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        level=log_config['level'],
        colorize=True
    )

    if not log_config['to_file']:
        return

    logs_dir = log_config['logs_dir']
    logs_dir.mkdir(parents=True, exist_ok=True)

    # Main application log
    logger.add(
        logs_dir / "opframe.log",
        format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}",
        level=log_config['level'],
        rotation=log_config['log_file_max_size'],
        retention=log_config['log_file_retention'],
        compression="gz",
        enqueue=True
    )

    # Error-only log
    logger.add(
        logs_dir / "errors.log",
        format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}",
        level="ERROR",
        rotation=log_config['error_log_max_size'],
        retention=log_config['error_log_retention'],
        compression="gz",
        enqueue=True
    )

    logger.debug("Logging configured successfully")


def parse_dims(text):
    """Parse '2,3,5' or a range '2-5' into a sorted list of dimensions."""
    dims = []
    for item in text.split(','):
        item = item.strip()
        try:
            if '-' in item and item.count('-') == 1:
                start, end = (int(part) for part in item.split('-'))
                dims.extend(range(start, end + 1))
            else:
                dims.append(int(item))
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid dimension '{item}'; use values like 2,3 or ranges like 2-5")
    if not dims or any(d < 2 for d in dims):
        raise argparse.ArgumentTypeError(f"dimensions must be at least 2, got '{text}'")
    return sorted(set(dims))


def parse_outcome(text):
    try:
        q, p = (int(part) for part in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f"outcome must look like 'q,p', got '{text}'")
    return q, p


def positive_int(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser():
    """
    Build the argument parser with one subcommand per operation.

    Returns
    -------
    argparse.ArgumentParser
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=float, default=None,
                        help='Absolute tolerance (default: OPFRAME_TOL or 1e-9)')
    common.add_argument('--seed', type=int, default=None,
                        help=f'Seed for random inputs (default: OPFRAME_SEED or {config.default_seed})')
    common.add_argument('--out', type=str, default=None,
                        help='Also write the result to this file (.json, or .csv for tables); '
                             'bare file names go under DATA_DIR/<command>/')
    common.add_argument('--export', action='store_true',
                        help='Write the result table as CSV under DATA_DIR with a generated name')
    common.add_argument('--pretty', action='store_true', help='Indent the JSON report')

    parser = argparse.ArgumentParser(
        description=f'{config.app_name} - operator frames, quasi-probabilities and protocol checks',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py verify all --dims 2,3 --tol 1e-9
  python main.py verify correlations --dim 3
  python main.py describe state --file mixed.json
  python main.py frame describe --name sic2 --dim 2
  python main.py qp tomo --frame sic2 --state state.json --shots 100000 --seed 7 --out run.json
  python main.py corr swap-check --frame kd --dim 3
  python main.py corr conjugate-check --dim 4 --seed 3 --out table.csv
  python main.py proto clone --dim 2 --state psi.json --frame kd --export
        """
    )
    commands = parser.add_subparsers(dest='command', required=True)

    verify = commands.add_parser('verify', parents=[common], help='Run numerical checks')
    verify.add_argument('selector', help=f"'all', a module ({', '.join(MODULES)}) or a check tag")
    verify.add_argument('--dims', type=parse_dims, default=None, help='Dimensions, e.g. 2,3 or 2-5 (default: 2,3)')
    verify.add_argument('--dim', type=int, default=None, help='Single dimension')
    verify.add_argument('--frame', default=None, help=f"Restrict to one frame ({', '.join(BUILTIN_FRAMES)})")

    describe_cmd = commands.add_parser('describe', parents=[common], help='Summarize a frame, state or report')
    describe_cmd.add_argument('entity', choices=['frame', 'state', 'report'])
    describe_cmd.add_argument('--file', default=None, help='JSON input file')
    describe_cmd.add_argument('--builtin', default=None, help='Builtin frame name')
    describe_cmd.add_argument('--dim', type=int, default=None)

    frame_cmd = commands.add_parser('frame', help='Frame utilities').add_subparsers(dest='action', required=True)
    frame_describe = frame_cmd.add_parser('describe', parents=[common], help='Print the condition report of a frame')
    frame_describe.add_argument('--name', default=None, help='Builtin frame name')
    frame_describe.add_argument('--file', default=None, help='Frame JSON file')
    frame_describe.add_argument('--dim', type=int, default=None)

    qp = commands.add_parser('qp', help='Quasi-probabilities').add_subparsers(dest='action', required=True)
    qp_dist = qp.add_parser('dist', parents=[common], help='Frame coefficients of a state')
    qp_dist.add_argument('--frame', required=True)
    qp_dist.add_argument('--dim', type=int, required=True)
    qp_dist.add_argument('--state', required=True)
    qp_tomo = qp.add_parser('tomo', parents=[common], help='Simulated linear-inversion tomography')
    qp_tomo.add_argument('--frame', default='sic2')
    qp_tomo.add_argument('--dim', type=int, default=2)
    qp_tomo.add_argument('--state', required=True)
    qp_tomo.add_argument('--shots', type=positive_int, required=True)

    corr = commands.add_parser('corr', help='SWAP and entanglement identities').add_subparsers(dest='action', required=True)
    swap_check = corr.add_parser('swap-check', parents=[common], help='SWAP (and fill) identity for a frame')
    swap_check.add_argument('--frame', required=True)
    swap_check.add_argument('--dim', type=int, required=True)
    pt_check = corr.add_parser('pt-check', parents=[common], help='Partial transpose of the entangled state')
    pt_check.add_argument('--dim', type=int, required=True)
    conjugate = corr.add_parser('conjugate-check', parents=[common],
                                help='Correlations of a random basis and its conjugate on the entangled state')
    conjugate.add_argument('--dim', type=int, required=True)

    proto = commands.add_parser('proto', help='Teleportation and cloning').add_subparsers(dest='action', required=True)
    tele = proto.add_parser('teleport', parents=[common], help='Teleport a state exactly')
    tele.add_argument('--dim', type=int, required=True)
    tele.add_argument('--state', required=True)
    which = tele.add_mutually_exclusive_group()
    which.add_argument('--all-outcomes', action='store_true', help='Report every Bell outcome')
    which.add_argument('--outcome', type=parse_outcome, default=None, help="One outcome 'q,p' (default 0,0)")
    which.add_argument('--sample', action='store_true', help='Draw one outcome with --seed')
    clone = proto.add_parser('clone', parents=[common], help='Optimal symmetric 1 -> 2 cloning')
    clone.add_argument('--dim', type=int, required=True)
    clone.add_argument('--state', required=True)
    clone.add_argument('--frame', default=None, help='Frame for the ideal-copy expansion and discrepancies')

    return parser


def _tolerance(args):
    if args.tol is None:
        return Tolerance.default()
    return Tolerance(absolute=args.tol, relative=config.tolerance_relative)


def _seed(args):
    return config.default_seed if args.seed is None else args.seed


def _report(command, parameters, results, tol, seed=None):
    return RunReport(command=command, parameters=parameters, results=results,
                     tolerance_used=tol, seed=seed, wall_time_ms=0)


def _table(df, data_type, frame=None, include_index=False):
    """A result table the --out .csv and --export options can write."""
    return {'df': df, 'data_type': data_type, 'frame': frame, 'include_index': include_index}


def _state_for(path, dim, tol):
    state = load_state(path, tol)
    if state.side != dim:
        raise DimensionMismatchError(f"{path} holds a d={state.side} state but --dim is {dim}")
    return state


def cmd_verify(args, tol):
    dims = [args.dim] if args.dim is not None else (args.dims or [2, 3])
    report = run_suite(args.selector, dims, frame=args.frame, tol=tol, seed=_seed(args))
    summary = report.results['summary']
    logger.info(f"verify {args.selector}: {summary['passed']} passed, {summary['failed']} failed, "
                f"{summary['skipped']} skipped")
    return report, summary['failed'] == 0, None


def cmd_describe(args, tol):
    return describe(args.entity, source=args.file, builtin=args.builtin, dim=args.dim, tol=tol), True, None


def cmd_frame(args, tol):
    if args.file:
        return describe('frame', source=args.file, tol=tol), True, None
    if args.name is None or args.dim is None:
        raise OperatorFrameError("frame describe needs --name with --dim, or --file")
    results = frame_summary(builtin_frame(args.name, args.dim, tol), tol)
    return _report('frame describe', {'name': args.name, 'dim': args.dim}, results, tol), True, None


def cmd_qp(args, tol):
    frame = builtin_frame(args.frame, args.dim, tol)
    rho = _state_for(args.state, args.dim, tol)
    parameters = {'frame': args.frame, 'dim': args.dim, 'state': args.state}

    if args.action == 'dist':
        q = quasi_distribution(frame, rho, tol)
        parts = negativity_parts(q, tol)
        results = {
            'distribution': q.to_json_dict(),
            'negativity': {'negative_real': parts.negative_real, 'imaginary': parts.imaginary, 'total': parts.total},
        }
        if frame.family == 'kd':
            over_a, over_b = marginals_kd(q, tol)
            results['marginals'] = {'over_a': over_a.tolist(), 'over_b': over_b.tolist()}
        return _report('qp dist', parameters, results, tol), True, _table(q.to_dataframe(), 'dist', args.frame)

    seed = _seed(args)
    run = simulate_tomography(frame, rho, args.shots, seed, tol)
    parameters['shots'] = args.shots
    counts = run.counts_dataframe([tuple(l) for l in frame.labels])
    return _report('qp tomo', parameters, run.to_json_dict(), tol, seed), True, _table(counts, 'tomo', args.frame)


def cmd_corr(args, tol):
    if args.action == 'pt-check':
        residual = verify_pt_swap(args.dim)
        minimum = pt_min_eigenvalue(args.dim)
        passed = residual <= tol.absolute and abs(minimum + 1.0 / args.dim) <= tol.absolute
        results = {
            'residual': residual,
            'spectrum': [float(v) for v in pt_spectrum(args.dim)],
            'min_eigenvalue': minimum,
            'passed': passed,
        }
        return _report('corr pt-check', {'dim': args.dim}, results, tol), passed, None

    if args.action == 'conjugate-check':
        seed = _seed(args)
        table = conjugate_correlation_test(args.dim, random_basis(args.dim, seed), tol)
        passed = table.off_diagonal_mass <= tol.absolute and table.diagonal_deviation <= tol.absolute
        results = dict(table.to_json_dict(), passed=passed)
        report = _report('corr conjugate-check', {'dim': args.dim}, results, tol, seed)
        return report, passed, _table(table.to_dataframe(), 'conjugate', include_index=True)

    frame = builtin_frame(args.frame, args.dim, tol)
    report = verify_swap_identity(frame, tol)
    if frame.flavor == FrameFlavor.POVM and report.residual is not None:
        report = verify_fill_identity(frame, tol)
    passed = all(flag is not False for flag in report.passed) and report.residual is not None
    return _report('corr swap-check', {'frame': args.frame, 'dim': args.dim}, report.to_json_dict(), tol), passed, None


def cmd_proto(args, tol):
    rho = _state_for(args.state, args.dim, tol)
    parameters = {'dim': args.dim, 'state': args.state}

    if args.action == 'clone':
        frame = builtin_frame(args.frame, args.dim, tol) if args.frame else None
        parameters['frame'] = args.frame
        clone = clone_report(rho, frame, tol)
        passed = clone.passed(tol)
        results = dict(clone.to_json_dict(), worst_residual=clone.worst_residual, passed=passed)
        table = None
        if frame is not None:
            table = _table(discrepancy_table(frame, tol).to_dataframe(), 'discrepancy', args.frame, include_index=True)
        return _report('proto clone', parameters, results, tol), passed, table

    seed = None
    if args.all_outcomes:
        outcomes = teleport_all(rho, args.dim, tol)
    elif args.sample:
        seed = _seed(args)
        outcomes = [sample_teleportation(rho, args.dim, seed, tol)]
    else:
        outcomes = [teleport(rho, args.dim, args.outcome or (0, 0), tol)]
    total = sum(o.probability for o in outcomes)
    passed = all(o.passed(tol) for o in outcomes)
    if args.all_outcomes:
        passed = passed and abs(total - 1.0) <= tol.bound(1.0)
    results = {
        'outcomes': [o.to_json_dict() for o in outcomes],
        'total_probability': total,
        'worst_corrected_trace_distance': max(o.corrected_trace_distance for o in outcomes),
        'passed': passed,
    }
    return _report('proto teleport', parameters, results, tol, seed), passed, None


HANDLERS = {
    'verify': cmd_verify,
    'describe': cmd_describe,
    'frame': cmd_frame,
    'qp': cmd_qp,
    'corr': cmd_corr,
    'proto': cmd_proto,
}


def write_outputs(args, data, table):
    """
    Write the --out file and the --export table of one command.

    Raises
    ------
    OperatorFrameError
        If a CSV is requested from a command that produces no table.
    """
    wants_csv = bool(args.out and args.out.endswith('.csv'))
    if (wants_csv or args.export) and table is None:
        raise OperatorFrameError(f"'{args.command}' has no result table to write as CSV; use a .json --out file")
    if wants_csv:
        export_dataframe_to_csv(table['df'], filename=resolve_output_path(args.out, args.command),
                                include_index=table['include_index'])
    elif args.out:
        write_json_report(data, resolve_output_path(args.out, args.command), pretty=args.pretty)
    if args.export:
        export_dataframe_to_csv(table['df'], command=args.command, data_type=table['data_type'],
                                dim=getattr(args, 'dim', None), frame=table['frame'],
                                include_index=table['include_index'])


def main(argv=None):
    """
    Run one command and return the process exit status.

    Parameters
    ----------
    argv : list, optional
        Arguments without the program name (defaults to ``sys.argv[1:]``)
    """
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        tol = _tolerance(args)
        report, passed, table = HANDLERS[args.command](args, tol)
        report = report.model_copy(update={'wall_time_ms': int((time.perf_counter() - started) * 1000)})
        data = report.to_json_dict()
        write_outputs(args, data, table)
    except (OperatorFrameError, ValidationError, OSError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    print(render_json(data, args.pretty))
    return EXIT_OK if passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    try:
        # Validate configuration first
        if not config.validate_config():
            print("Configuration validation failed. Please check your .env file.", file=sys.stderr)
            sys.exit(EXIT_USAGE)

        # Setup logging using configuration
        setup_logging()

        sys.exit(main())
    except KeyboardInterrupt:
        logger.warning("Application interrupted by user")
        sys.exit(130)
