"""
Data models for finite-dimensional operators and states using Pydantic for
validation and type safety.

Every model is frozen and stores its numbers in a read-only complex128 numpy
array, so values can be shared between threads without copying.

Subsystem ordering: factor 1 is the slow (most significant) index in the
Kronecker layout, i.e. basis state |m,n> sits at row m*d2 + n.
"""

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from .constants import TOLERANCE_DEFAULTS
from .errors import DimensionMismatchError, StateValidationError

# Import configuration
sys.path.append(str(Path(__file__).parent.parent.parent))
from config import config


def _readonly_complex(value: Any, ndim: int) -> np.ndarray:
    array = np.array(value, dtype=np.complex128, copy=True)
    if array.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {array.shape}")
    array.setflags(write=False)
    return array


def real_array(value: Any, name: str) -> np.ndarray:
    """Rectangular float array from nested JSON lists; ragged or non-numeric input is rejected."""
    try:
        array = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise DimensionMismatchError(f"'{name}' is not a rectangular array of numbers ({e})")
    if not np.all(np.isfinite(array)):
        raise DimensionMismatchError(f"'{name}' contains null, NaN or infinite entries")
    return array


def read_factors(value: Any, side: int) -> Tuple[int, ...]:
    """Subsystem factors from JSON, defaulting to a single factor."""
    if not value:
        return (side,)
    try:
        factors = tuple(int(k) for k in value)
    except (TypeError, ValueError):
        raise DimensionMismatchError(f"'factors' must be a list of integers, got {value!r}")
    if int(np.prod(factors)) != side:
        raise DimensionMismatchError(f"factors {list(factors)} do not match side {side}")
    return factors


class Tolerance(BaseModel):
    """
    Absolute and relative tolerance pair used by every numerical verdict.

    A value ``v`` is considered equal to ``target`` when
    ``|v - target| <= absolute + relative * |target|``.
    """

    model_config = ConfigDict(frozen=True)

    absolute: float = Field(
        TOLERANCE_DEFAULTS['absolute'],
        description="Absolute tolerance",
        ge=0.0
    )

    relative: float = Field(
        TOLERANCE_DEFAULTS['relative'],
        description="Relative tolerance",
        ge=0.0
    )

    @classmethod
    def default(cls) -> "Tolerance":
        """Tolerance from configuration (OPFRAME_TOL / OPFRAME_RTOL)."""
        return cls(**config.tolerance_config)

    def bound(self, scale: float = 0.0) -> float:
        """Allowed deviation around a target of magnitude ``scale``."""
        return self.absolute + self.relative * abs(scale)

    def close(self, value: complex, target: complex) -> bool:
        return abs(value - target) <= self.bound(abs(target))


def resolve_tolerance(tol: Optional[Tolerance]) -> Tolerance:
    """Return ``tol`` or the configured default."""
    return tol if tol is not None else Tolerance.default()


class Operator(BaseModel):
    """
    Dense complex square matrix with declared subsystem dimensions.

    Hermiticity, positivity and unit trace are queryable, never assumed.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    factors: Tuple[int, ...] = Field(
        ...,
        description="Ordered subsystem dimensions (one or two factors)",
        min_length=1,
        max_length=2
    )

    entries: np.ndarray = Field(
        ...,
        description="d_total x d_total complex matrix, row-major"
    )

    @field_validator('factors')
    @classmethod
    def validate_factors(cls, v):
        if any(f < 1 for f in v):
            raise ValueError(f"subsystem dimensions must be positive, got {v}")
        return tuple(int(f) for f in v)

    @field_validator('entries', mode='before')
    @classmethod
    def coerce_entries(cls, v):
        return _readonly_complex(v, 2)

    @model_validator(mode='after')
    def validate_shape(self):
        side = int(np.prod(self.factors))
        if self.entries.shape != (side, side):
            raise ValueError(
                f"entries have shape {self.entries.shape}, expected ({side}, {side}) for factors {list(self.factors)}"
            )
        return self

    @classmethod
    def from_matrix(cls, matrix: Any, factors: Optional[Tuple[int, ...]] = None) -> "Operator":
        """Wrap a square matrix; a single factor equal to its side by default."""
        array = np.asarray(matrix, dtype=np.complex128)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DimensionMismatchError(f"operator must be square, got shape {array.shape}")
        return cls(factors=factors or (array.shape[0],), entries=array)

    @property
    def side(self) -> int:
        return self.entries.shape[0]

    @property
    def dim(self) -> int:
        """Per-subsystem dimension (the first factor)."""
        return self.factors[0]

    @property
    def is_bipartite(self) -> bool:
        return len(self.factors) == 2

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def dagger(self) -> "Operator":
        return Operator(factors=self.factors, entries=self.entries.conj().T)

    def conj(self) -> "Operator":
        """Entrywise complex conjugate in the computational basis."""
        return Operator(factors=self.factors, entries=self.entries.conj())

    def max_asymmetry(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T))) if self.side else 0.0

    def is_hermitian(self, tol: Optional[Tolerance] = None) -> bool:
        tol = resolve_tolerance(tol)
        return self.max_asymmetry() <= tol.absolute

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the Hermitian part."""
        hermitian_part = (self.entries + self.entries.conj().T) / 2
        return float(np.linalg.eigvalsh(hermitian_part)[0])

    def is_positive(self, tol: Optional[Tolerance] = None) -> bool:
        tol = resolve_tolerance(tol)
        return self.is_hermitian(tol) and self.min_eigenvalue() >= -tol.absolute

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.entries.shape != other.entries.shape:
            raise DimensionMismatchError(f"cannot multiply {self.entries.shape} by {other.entries.shape}")
        return Operator(factors=self.factors, entries=self.entries @ other.entries)

    def __add__(self, other: "Operator") -> "Operator":
        if self.entries.shape != other.entries.shape:
            raise DimensionMismatchError(f"cannot add {self.entries.shape} and {other.entries.shape}")
        return Operator(factors=self.factors, entries=self.entries + other.entries)

    def __sub__(self, other: "Operator") -> "Operator":
        if self.entries.shape != other.entries.shape:
            raise DimensionMismatchError(f"cannot subtract {other.entries.shape} from {self.entries.shape}")
        return Operator(factors=self.factors, entries=self.entries - other.entries)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(factors=self.factors, entries=self.entries * scalar)

    __rmul__ = __mul__

    def to_json_dict(self) -> Dict[str, Any]:
        """Interchange form ``{"factors": [...], "re": [[...]], "im": [[...]]}``."""
        return {
            'factors': list(self.factors),
            're': self.entries.real.tolist(),
            'im': self.entries.imag.tolist(),
        }

    @classmethod
    def from_json_dict(cls, data: Dict[str, Any]) -> "Operator":
        """
        Read the interchange form, rejecting non-square or mismatched re/im parts.

        Parameters
        ----------
        data : dict
            Object with ``re`` and ``im`` (row-major nested lists) and optional
            ``factors`` (defaults to a single factor).
        """
        if not isinstance(data, dict) or 're' not in data or 'im' not in data:
            raise DimensionMismatchError("operator JSON needs both 're' and 'im'")
        re = real_array(data['re'], 're')
        im = real_array(data['im'], 'im')
        if re.shape != im.shape:
            raise DimensionMismatchError(f"'re' has shape {re.shape} but 'im' has shape {im.shape}")
        if re.ndim != 2 or re.shape[0] != re.shape[1]:
            raise DimensionMismatchError(f"operator JSON must be square, got shape {re.shape}")
        return cls(factors=read_factors(data.get('factors'), re.shape[0]), entries=re + 1j * im)


def density_violations(matrix: np.ndarray, tol: Tolerance) -> List[str]:
    """List every physicality violation of a candidate density matrix."""
    violations = []
    asymmetry = float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0
    if asymmetry > tol.absolute:
        violations.append(f"not Hermitian (max asymmetry {asymmetry:.3e})")
    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > tol.bound(1.0):
        violations.append(f"trace {trace.real:.12g}{trace.imag:+.3g}j != 1")
    min_eig = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)[0])
    if min_eig < -tol.absolute:
        violations.append(f"negative eigenvalue {min_eig:.6g}")
    return violations


class DensityOperator(Operator):
    """
    Positive, unit-trace operator representing a preparation rho(a).
    """

    @model_validator(mode='after')
    def validate_physical(self, info: ValidationInfo):
        context = info.context or {}
        if context.get('prechecked'):
            return self
        violations = density_violations(self.entries, context.get('tol') or Tolerance.default())
        if violations:
            raise ValueError("non-physical state: " + "; ".join(violations))
        return self

    @classmethod
    def from_matrix(cls, matrix: Any, factors: Optional[Tuple[int, ...]] = None,
                    tol: Optional[Tolerance] = None) -> "DensityOperator":
        """
        Validate and wrap a density matrix.

        Raises
        ------
        StateValidationError
            Listing every violation (non-Hermitian, trace != 1, negative eigenvalue).
        """
        array = np.asarray(matrix, dtype=np.complex128)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DimensionMismatchError(f"density matrix must be square, got shape {array.shape}")
        violations = density_violations(array, resolve_tolerance(tol))
        if violations:
            raise StateValidationError(violations)
        return cls.model_validate(
            {'factors': factors or (array.shape[0],), 'entries': array},
            context={'prechecked': True}
        )

    @classmethod
    def from_operator(cls, op: Operator, tol: Optional[Tolerance] = None) -> "DensityOperator":
        return cls.from_matrix(op.entries, op.factors, tol)

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))


class StateVector(BaseModel):
    """
    Unit-norm complex column vector |psi>.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    amplitudes: np.ndarray = Field(
        ...,
        description="Complex amplitudes in the computational basis"
    )

    @field_validator('amplitudes', mode='before')
    @classmethod
    def coerce_amplitudes(cls, v):
        return _readonly_complex(v, 1)

    @model_validator(mode='after')
    def validate_norm(self, info: ValidationInfo):
        tol = (info.context or {}).get('tol') or Tolerance.default()
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > tol.bound(1.0):
            raise ValueError(f"state vector norm {norm:.12g} != 1")
        return self

    @classmethod
    def from_amplitudes(cls, amplitudes: Any, normalize: bool = False,
                        tol: Optional[Tolerance] = None) -> "StateVector":
        tol = resolve_tolerance(tol)
        array = np.asarray(amplitudes, dtype=np.complex128).ravel()
        norm = float(np.linalg.norm(array))
        if norm == 0.0:
            raise StateValidationError(["zero vector"])
        if normalize:
            array = array / norm
        elif abs(norm - 1.0) > tol.bound(1.0):
            raise StateValidationError([f"norm {norm:.12g} != 1"])
        return cls.model_validate({'amplitudes': array}, context={'tol': tol})

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def conj(self) -> "StateVector":
        return StateVector(amplitudes=self.amplitudes.conj())

    def inner(self, other: "StateVector") -> complex:
        """<self|other>"""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self, factors: Optional[Tuple[int, ...]] = None,
                  tol: Optional[Tolerance] = None) -> DensityOperator:
        matrix = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityOperator.from_matrix(matrix, factors, tol)

    def to_json_dict(self) -> Dict[str, Any]:
        return {'re': self.amplitudes.real.tolist(), 'im': self.amplitudes.imag.tolist()}
