# Numerical constants and builtin registries
# Structured as dictionaries for better organization and extensibility

from .errors import FrameConstructionError

# Tolerances used when neither --tol nor OPFRAME_TOL is given
TOLERANCE_DEFAULTS = {
    'absolute': 1e-9,
    'relative': 1e-9,
}

# Pseudo-inverse cutoff relative to the largest singular value
PINV_RCOND = 1e-12

# Builtin frames: CLI name -> description and dimension rule
BUILTIN_FRAMES = {
    'projective': {
        'display_name': 'Projective (computational basis)',
        'dims': 'any d >= 2',
    },
    'matrix-unit': {
        'display_name': 'Matrix units |n><n\'|',
        'dims': 'any d >= 2',
    },
    'kd': {
        'display_name': 'Kirkwood-Dirac (computational / Fourier)',
        'dims': 'any d >= 2',
    },
    'phase-point': {
        'display_name': 'Discrete Wigner phase-point operators',
        'dims': 'odd prime d',
    },
    'sic2': {
        'display_name': 'Qubit tetrahedral SIC-POVM',
        'dims': 'd = 2',
    },
}

# Aliases accepted on the command line
FRAME_ALIASES = {
    'matrix_unit': 'matrix-unit',
    'matrixunit': 'matrix-unit',
    'phase_point': 'phase-point',
    'wigner': 'phase-point',
    'sic': 'sic2',
    'dirac': 'kd',
}


def canonical_frame_name(name):
    """
    Resolve a builtin frame name or alias.

    Args:
        name (str): Name as typed by the user

    Returns:
        str: Canonical key of BUILTIN_FRAMES

    Example:
        canonical_frame_name('phase_point')  # 'phase-point'
    """
    key = name.strip().lower()
    key = FRAME_ALIASES.get(key, key)
    if key not in BUILTIN_FRAMES:
        raise FrameConstructionError(f"Unknown frame: {name}. Available: {list(BUILTIN_FRAMES.keys())}")
    return key


def is_odd_prime(d):
    """True when d is an odd prime."""
    if d < 3 or d % 2 == 0:
        return False
    k = 3
    while k * k <= d:
        if d % k == 0:
            return False
        k += 2
    return True
