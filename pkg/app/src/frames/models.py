"""
Data models for operator frames and their condition verdicts using Pydantic
for validation and type safety.
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.errors import FrameConstructionError, InvalidIndexError
from ..core.models import Operator, Tolerance

IndexLabel = Tuple[int, ...]


class IndexScheme(str, Enum):
    """How frame indices are labelled."""
    SINGLE = "single"
    PAIR = "pair"
    PHASE_POINT = "phase_point"


class FrameFlavor(str, Enum):
    """Structural family of a frame."""
    ORTHOGONAL_BASIS = "orthogonal_basis"
    QUASI_PROBABILITY = "quasi_probability"
    POVM = "povm"
    GENERIC = "generic"


class OperatorFrame(BaseModel):
    """
    Indexed family {Lambda(i)} with duals {R(i)} and weights lambda_i.

    Weights are stored only when orthogonality holds, i.e. when
    Lambda(i) = lambda_i R^dagger(i) for every i.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    frame_id: str = Field(
        ...,
        description="Identifier such as 'phase-point-d3'"
    )

    family: str = Field(
        ...,
        description="Constructor family (projective, matrix-unit, kd, phase-point, sic2, deformed, custom)"
    )

    dim: int = Field(
        ...,
        description="Hilbert space dimension d",
        ge=1
    )

    elements: Tuple[Operator, ...] = Field(
        ...,
        description="Frame elements Lambda(i)",
        min_length=1
    )

    duals: Optional[Tuple[Operator, ...]] = Field(
        None,
        description="Dual (reconstruction) operators R(i)"
    )

    weights: Optional[np.ndarray] = Field(
        None,
        description="Weights lambda_i with Lambda(i) = lambda_i R^dagger(i), when orthogonality holds"
    )

    labels: Tuple[IndexLabel, ...] = Field(
        ...,
        description="Index label of each element, e.g. (n,), (a, b) or (q, p)"
    )

    index_scheme: IndexScheme = Field(
        ...,
        description="Index labelling scheme"
    )

    flavor: FrameFlavor = Field(
        ...,
        description="Frame flavor"
    )

    rank: Optional[int] = Field(
        None,
        description="Rank of the span of the elements in operator space",
        ge=0
    )

    gram_condition_number: Optional[float] = Field(
        None,
        description="Condition number of the pairwise-trace Gram matrix on its support"
    )

    @field_validator('weights', mode='before')
    @classmethod
    def coerce_weights(cls, v):
        if v is None:
            return None
        array = np.array(v, dtype=np.complex128, copy=True).ravel()
        array.setflags(write=False)
        return array

    @model_validator(mode='after')
    def validate_structure(self):
        d = self.dim
        m = len(self.elements)
        for op in self.elements:
            if op.entries.shape != (d, d):
                raise ValueError(f"element of shape {op.entries.shape} in a d={d} frame")
        if len(self.labels) != m:
            raise ValueError(f"{len(self.labels)} labels for {m} elements")
        if self.duals is not None:
            if len(self.duals) != m:
                raise ValueError(f"{len(self.duals)} duals for {m} elements")
            for op in self.duals:
                if op.entries.shape != (d, d):
                    raise ValueError(f"dual of shape {op.entries.shape} in a d={d} frame")
        if self.weights is not None and self.weights.shape[0] != m:
            raise ValueError(f"{self.weights.shape[0]} weights for {m} elements")

        tol = Tolerance.default()
        bound = tol.absolute * max(1, m) ** 0.5 * 10
        if self.flavor in (FrameFlavor.QUASI_PROBABILITY, FrameFlavor.POVM):
            total = np.sum(self.element_stack(), axis=0)
            deviation = float(np.linalg.norm(total - np.eye(d)))
            if deviation > bound:
                raise ValueError(f"{self.flavor.value} frame elements sum to I only within {deviation:.3e}")
        if self.flavor == FrameFlavor.QUASI_PROBABILITY and self.duals is not None:
            traces = np.array([op.trace() for op in self.duals])
            if np.max(np.abs(traces - 1.0)) > bound:
                raise ValueError("quasi_probability duals must have unit trace")
        if self.flavor == FrameFlavor.POVM:
            for k, op in enumerate(self.elements):
                if not op.is_positive(tol):
                    raise ValueError(f"povm element {self.labels[k]} is not positive")
        return self

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def has_duals(self) -> bool:
        return self.duals is not None

    @property
    def has_weights(self) -> bool:
        return self.weights is not None

    @property
    def is_complete(self) -> bool:
        return self.rank is not None and self.rank == self.dim ** 2

    def element_stack(self) -> np.ndarray:
        """Elements as an (m, d, d) array."""
        return np.stack([op.entries for op in self.elements])

    def dual_stack(self) -> np.ndarray:
        """Duals as an (m, d, d) array."""
        if self.duals is None:
            raise ValueError(f"frame {self.frame_id} has no duals")
        return np.stack([op.entries for op in self.duals])

    def position(self, index: Union[int, IndexLabel, List[int]]) -> int:
        """
        Resolve an integer position or an index label to a position.

        Raises
        ------
        InvalidIndexError
            If the index is out of range or the label is unknown.
        """
        if isinstance(index, (int, np.integer)):
            if not 0 <= int(index) < self.size:
                raise InvalidIndexError(f"index {index} out of range for {self.size} elements")
            return int(index)
        label = tuple(int(k) for k in index)
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidIndexError(f"label {label} not in frame {self.frame_id}")

    def rebuilt(self, **updates: Any) -> "OperatorFrame":
        """Validated copy with some fields replaced."""
        fields = {name: getattr(self, name) for name in type(self).model_fields}
        fields.update(updates)
        return type(self)(**fields)

    def to_json_dict(self) -> Dict[str, Any]:
        """Serialize elements, duals, weights (complex pairs), labels and metadata."""
        return {
            'frame_id': self.frame_id,
            'family': self.family,
            'dim': self.dim,
            'index_scheme': self.index_scheme.value,
            'flavor': self.flavor.value,
            'labels': [list(label) for label in self.labels],
            'elements': [op.to_json_dict() for op in self.elements],
            'duals': [op.to_json_dict() for op in self.duals] if self.duals is not None else None,
            'weights': [[float(w.real), float(w.imag)] for w in self.weights] if self.weights is not None else None,
        }

    @classmethod
    def from_json_dict(cls, data: Dict[str, Any]) -> "OperatorFrame":
        """
        Read the interchange form written by ``to_json_dict``.

        Raises
        ------
        FrameConstructionError
            If the document has no elements or its weights are not (re, im) pairs.
        """
        if not isinstance(data, dict) or not data.get('elements'):
            raise FrameConstructionError("frame document needs a non-empty 'elements' list")
        elements = tuple(Operator.from_json_dict(op) for op in data['elements'])
        duals = data.get('duals')
        weights = data.get('weights')
        if weights:
            try:
                weights = [complex(float(re), float(im)) for re, im in weights]
            except (TypeError, ValueError):
                raise FrameConstructionError("frame weights must be [re, im] pairs")
        return cls(
            frame_id=data.get('frame_id', 'custom'),
            family=data.get('family', 'custom'),
            dim=data.get('dim', elements[0].side),
            elements=elements,
            duals=tuple(Operator.from_json_dict(op) for op in duals) if duals else None,
            weights=weights or None,
            labels=tuple(tuple(label) for label in data.get('labels', [[k] for k in range(len(elements))])),
            index_scheme=data.get('index_scheme', IndexScheme.SINGLE),
            flavor=data.get('flavor', FrameFlavor.GENERIC),
        )


class PositivityVerdict(BaseModel):
    """Condition 1: every Lambda(i) self-adjoint and positive."""
    model_config = ConfigDict(frozen=True)

    satisfied: bool
    min_eigenvalue: float = Field(..., description="Most negative eigenvalue over the Hermitian elements")
    min_eigenvalue_index: Optional[List[int]] = None
    max_asymmetry: float = Field(..., description="Largest |Lambda - Lambda^dagger| entry over all elements")
    max_asymmetry_index: Optional[List[int]] = None
    non_hermitian_count: int = Field(0, ge=0)


class OrthogonalityVerdict(BaseModel):
    """Condition 2: Lambda(i) = lambda_i R^dagger(i), i.e. no overlap between elements."""
    model_config = ConfigDict(frozen=True)

    satisfied: bool
    max_overlap: float = Field(..., description="max over i != j of |Tr(Lambda(i) Lambda^dagger(j))|")
    overlap_pair: Optional[List[List[int]]] = None
    biorthogonality_defect: float = Field(..., description="max over i, j of |Tr(Lambda(i) R(j)) - delta_ij|")
    weights_defined: bool


class CompletenessVerdict(BaseModel):
    """Condition 3: the elements span all d x d operators."""
    model_config = ConfigDict(frozen=True)

    satisfied: bool
    rank: int = Field(..., ge=0)
    target_rank: int = Field(..., ge=1)

    @property
    def deficit(self) -> int:
        return self.target_rank - self.rank


class ConditionReport(BaseModel):
    """
    Machine-checkable verdicts and numeric witnesses for the three conditions.
    """
    model_config = ConfigDict(frozen=True)

    frame_id: str
    flavor: FrameFlavor
    positivity: PositivityVerdict
    orthogonality: OrthogonalityVerdict
    completeness: CompletenessVerdict
    satisfied_count: int = Field(..., ge=0, le=3)
    tolerance: float

    @model_validator(mode='after')
    def validate_count(self):
        expected = sum([self.positivity.satisfied, self.orthogonality.satisfied, self.completeness.satisfied])
        if expected != self.satisfied_count:
            raise ValueError(f"satisfied_count {self.satisfied_count} != {expected} true verdicts")
        return self

    @property
    def verdicts(self) -> Tuple[bool, bool, bool]:
        return (self.positivity.satisfied, self.orthogonality.satisfied, self.completeness.satisfied)


class WitnessKind(str, Enum):
    NON_POSITIVE_DUAL = "non_positive_dual"
    NON_HERMITIAN_ELEMENT = "non_hermitian_element"
    NON_POSITIVE_ELEMENT = "non_positive_element"
    NON_HERMITIAN_DUAL = "non_hermitian_dual"
    OVERLAP = "overlap"
    RANK_DEFICIT = "rank_deficit"


class NoGoWitness(BaseModel):
    """One piece of evidence that a condition fails."""
    model_config = ConfigDict(frozen=True)

    kind: WitnessKind
    value: float = Field(..., description="Eigenvalue, asymmetry, overlap or rank deficit")
    index: Optional[List[int]] = None
    pair: Optional[List[List[int]]] = None
    eigenvector: Optional[List[List[float]]] = Field(
        None,
        description="Eigenvector as [re, im] pairs for eigenvalue witnesses"
    )


class NoGoCertificate(BaseModel):
    """
    Proof record that a frame satisfies at most two of the three conditions.

    The first witness is the primary one: a non-positive element or dual when
    the frame is complete, the rank deficit otherwise.
    """
    model_config = ConfigDict(frozen=True)

    frame_id: str
    complete: bool
    satisfied_count: int = Field(..., ge=0, le=2)
    witnesses: List[NoGoWitness] = Field(..., min_length=1)

    @property
    def primary(self) -> NoGoWitness:
        return self.witnesses[0]
