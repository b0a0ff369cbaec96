"""
Summaries of frames, states and saved reports for the ``describe`` command.
"""

import time
from typing import Any, Dict, Optional

from loguru import logger
from pydantic import ValidationError

from ..core.errors import InputParseError
from ..core.hilbert import describe_spectrum
from ..core.models import Tolerance, resolve_tolerance
from ..frames.conditions import check_conditions, no_go_certificate
from ..frames.frames import builtin_frame, with_duals
from ..frames.models import OperatorFrame
from ..quasiprob.quasiprob import reconstruction_negativity
from ..utils.common import load_json_file, load_state
from .models import RunReport


def load_frame(path, tol: Optional[Tolerance] = None) -> OperatorFrame:
    """Read a frame in the interchange form and compute missing duals."""
    data = load_json_file(path)
    try:
        frame = OperatorFrame.from_json_dict(data)
    except (ValueError, KeyError, IndexError, TypeError) as e:
        raise InputParseError(str(path), f"not a frame document ({e})")
    return with_duals(frame, tol)


def frame_summary(frame: OperatorFrame, tol: Optional[Tolerance] = None) -> Dict[str, Any]:
    """ConditionReport, no-go certificate and dual negativity of one frame."""
    tol = resolve_tolerance(tol)
    frame = with_duals(frame, tol)
    report = check_conditions(frame, tol)
    return {
        'frame': {
            'frame_id': frame.frame_id,
            'family': frame.family,
            'dim': frame.dim,
            'size': frame.size,
            'index_scheme': frame.index_scheme.value,
            'flavor': frame.flavor.value,
            'rank': frame.rank,
            'gram_condition_number': frame.gram_condition_number,
            'weights_defined': frame.has_weights,
        },
        'conditions': report.model_dump(mode='json'),
        'certificate': no_go_certificate(frame, tol).model_dump(mode='json'),
        'reconstruction_negativity': reconstruction_negativity(frame, tol).model_dump(mode='json'),
    }


def describe(entity: str, source: Optional[str] = None, builtin: Optional[str] = None,
             dim: Optional[int] = None, tol: Optional[Tolerance] = None) -> RunReport:
    """
    Describe a frame, a state or a saved report.

    Parameters
    ----------
    entity : str
        'frame', 'state' or 'report'.
    source : str, optional
        Path of a JSON input.
    builtin : str, optional
        Builtin frame name (frames only, instead of ``source``).
    dim : int, optional
        Dimension of the builtin frame.

    Raises
    ------
    InputParseError
        If ``source`` is malformed or missing.
    StateValidationError
        If a state is not physical, listing the violations.

    Examples
    --------
    >>> describe('frame', builtin='phase-point', dim=3).results['conditions']['satisfied_count']
    2
    """
    started = time.perf_counter()
    tol = resolve_tolerance(tol)
    parameters: Dict[str, Any] = {'entity': entity, 'source': source}

    if entity == 'frame':
        if source is not None:
            frame = load_frame(source, tol)
        else:
            if builtin is None or dim is None:
                raise InputParseError('<arguments>', 'describe frame needs --file or --builtin with --dim')
            frame = builtin_frame(builtin, dim, tol)
            parameters.update(builtin=builtin, dim=dim)
        results = frame_summary(frame, tol)
    elif entity == 'state':
        if source is None:
            raise InputParseError('<arguments>', 'describe state needs --file')
        results = describe_spectrum(load_state(source, tol), tol)
    elif entity == 'report':
        if source is None:
            raise InputParseError('<arguments>', 'describe report needs --file')
        try:
            saved = RunReport.model_validate(load_json_file(source))
        except ValidationError as e:
            raise InputParseError(source, f"not a run report ({e.error_count()} validation errors)")
        results = {
            'command': saved.command,
            'parameters': saved.parameters,
            'seed': saved.seed,
            'summary': saved.summary(),
            'failed': [c.model_dump(mode='json') for c in saved.checks if not c.passed and not c.skipped],
        }
    else:
        raise InputParseError('<arguments>', f"cannot describe '{entity}'; choose frame, state or report")

    logger.info(f"Described {entity} {source or builtin}")
    return RunReport(
        command=f'describe {entity}',
        parameters=parameters,
        results=results,
        tolerance_used=tol,
        wall_time_ms=int((time.perf_counter() - started) * 1000),
    )
