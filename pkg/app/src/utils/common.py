import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd
from loguru import logger

# Import configuration
sys.path.append(str(Path(__file__).parent.parent.parent))
from config import config

from ..core.errors import DimensionMismatchError, InputParseError
from ..core.models import DensityOperator, Operator, StateVector, Tolerance, read_factors, real_array


def load_json_file(path):
    """
    Read a JSON document, reporting the location of any syntax error.

    Parameters
    ----------
    path : str or pathlib.Path
        File to read.

    Returns
    -------
    dict or list
        The decoded document.

    Raises
    ------
    InputParseError
        If the file is missing or is not valid JSON (line and column attached).
    """
    path = str(path)
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise InputParseError(path, e.strerror or str(e))
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputParseError(path, e.msg, e.lineno, e.colno)


def state_from_json(data: Dict[str, Any], tol: Optional[Tolerance] = None) -> DensityOperator:
    """
    Build a density operator from the interchange form.

    A square ``re``/``im`` pair is read as a density matrix; a flat pair is
    read as a state vector and turned into its projector.
    """
    if not isinstance(data, dict) or 're' not in data or 'im' not in data:
        raise DimensionMismatchError("state JSON must be an object with 're' and 'im'")
    re = real_array(data['re'], 're')
    if re.ndim == 1:
        im = real_array(data['im'], 'im')
        if im.shape != re.shape:
            raise DimensionMismatchError(f"'re' has shape {re.shape} but 'im' has shape {im.shape}")
        vector = StateVector.from_amplitudes(re + 1j * im, normalize=bool(data.get('normalize', False)), tol=tol)
        return vector.projector(read_factors(data.get('factors'), re.shape[0]), tol)
    return DensityOperator.from_operator(Operator.from_json_dict(data), tol)


def load_state(path, tol: Optional[Tolerance] = None) -> DensityOperator:
    """Load and validate a state file (density matrix or state vector)."""
    state = state_from_json(load_json_file(path), tol)
    logger.debug(f"Loaded {state.side}x{state.side} state from {path}")
    return state


def generate_export_filename(command, data_type, dim=None, frame=None,
                             file_format="csv", base_dir=None):
    """
    Generate a standardized filename for exported results.
    Uses configuration-based data directory if base_dir is not provided.

    Parameters
    ----------
    command : str
        The command group (e.g., 'qp', 'corr', 'proto')
    data_type : str
        The kind of result (e.g., 'dist', 'tomo', 'teleport')
    dim : int, optional
        Hilbert space dimension
    frame : str, optional
        Frame name (e.g., 'kd', 'sic2')
    file_format : str
        The file format extension (default: 'csv')
    base_dir : str, optional
        Base directory for exports (uses config.data_dir if None)

    Returns
    -------
    str
        Full path to the export file

    Examples
    --------
    >>> generate_export_filename('qp', 'dist', dim=2, frame='kd', base_dir='data')
    'data/qp/kd_d2_dist.csv'
    """
    if base_dir is None:
        base_dir = str(config.data_dir)

    filename_parts = []
    if frame:
        filename_parts.append(frame.lower())
    if dim:
        filename_parts.append(f"d{dim}")
    filename_parts.append(data_type)

    filename = f"{'_'.join(filename_parts)}.{file_format}"
    return os.path.join(base_dir, command.lower(), filename)


def resolve_output_path(out, command, base_dir=None):
    """
    Place a bare file name under the data directory.

    ``run.json`` for the ``qp`` command becomes ``<DATA_DIR>/qp/run.json``;
    a path with a directory component is returned unchanged.
    """
    if os.path.dirname(out):
        return out
    if base_dir is None:
        base_dir = str(config.data_dir)
    return os.path.join(base_dir, command.lower(), out)


def export_dataframe_to_csv(df, filename=None, command=None, data_type=None,
                            dim=None, frame=None, include_index=False,
                            create_dirs=True, base_dir=None):
    """
    Export a pandas DataFrame to a CSV file with automatic filename generation.
    Uses configuration-based data directory if base_dir is not provided.

    Parameters
    ----------
    df : pandas.DataFrame
        The DataFrame to export
    filename : str, optional
        Explicit filename to use. If not provided, will auto-generate based on other params
    command : str, optional
        The command group (for auto-generation)
    data_type : str, optional
        Type of result (for auto-generation)
    dim : int, optional
        Dimension (for auto-generation)
    frame : str, optional
        Frame name (for auto-generation)
    include_index : bool, optional
        Whether to include the DataFrame index in the CSV (default: False)
    create_dirs : bool, optional
        Whether to create directories if they don't exist (default: True)
    base_dir : str, optional
        Base directory for exports (uses config.data_dir if None)

    Returns
    -------
    str
        The filename of the exported CSV file

    Examples
    --------
    # Explicit filename
    export_dataframe_to_csv(df, filename="dist.csv")

    # Auto-generated filename for a KD distribution
    export_dataframe_to_csv(df, command='qp', data_type='dist', dim=2, frame='kd')
    """
    if filename is None:
        if not all([command, data_type]):
            raise ValueError("Must provide either 'filename' or both 'command' and 'data_type'")
        filename = generate_export_filename(command, data_type, dim, frame, base_dir=base_dir)

    directory = os.path.dirname(filename)
    if create_dirs and directory:
        os.makedirs(directory, exist_ok=True)

    df.to_csv(filename, index=include_index)
    logger.info(f"DataFrame exported to '{filename}'")
    return filename


def render_json(data, pretty=False):
    """Deterministic JSON text: sorted keys, fixed separators."""
    if pretty:
        return json.dumps(data, indent=2, sort_keys=True)
    return json.dumps(data, sort_keys=True, separators=(',', ':'))


def write_json_report(data, filename, pretty=True, create_dirs=True):
    """
    Write a JSON document to ``filename``.

    Returns
    -------
    str
        The filename written
    """
    directory = os.path.dirname(filename)
    if create_dirs and directory:
        os.makedirs(directory, exist_ok=True)
    with open(filename, 'w', encoding='utf-8') as handle:
        handle.write(render_json(data, pretty))
        handle.write("\n")
    logger.info(f"Report written to '{filename}'")
    return filename
