"""
Data models for quasi-probability distributions and tomography runs using
Pydantic for validation and type safety.
"""

from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.models import DensityOperator, Operator
from ..frames.models import IndexScheme


class QuasiDistribution(BaseModel):
    """
    Complex weights P(i|a) = Tr(Lambda(i) rho) aligned with a frame's indices.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    frame_id: str = Field(
        ...,
        description="Identifier of the generating frame"
    )

    family: str = Field(
        ...,
        description="Constructor family of the generating frame"
    )

    index_scheme: IndexScheme = Field(
        ...,
        description="Index scheme of the generating frame"
    )

    labels: Tuple[Tuple[int, ...], ...] = Field(
        ...,
        description="Frame index label for each value"
    )

    values: np.ndarray = Field(
        ...,
        description="Complex values P(i|a)"
    )

    @field_validator('values', mode='before')
    @classmethod
    def coerce_values(cls, v):
        array = np.array(v, dtype=np.complex128, copy=True).ravel()
        array.setflags(write=False)
        return array

    @model_validator(mode='after')
    def validate_alignment(self):
        if len(self.labels) != self.values.shape[0]:
            raise ValueError(f"{len(self.labels)} labels for {self.values.shape[0]} values")
        return self

    @property
    def total(self) -> complex:
        return complex(np.sum(self.values))

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def value(self, label: Tuple[int, ...]) -> complex:
        return complex(self.values[self.labels.index(tuple(label))])

    def to_dataframe(self) -> pd.DataFrame:
        """
        One row per frame index: label columns ``i0, i1, ...`` then ``re`` and ``im``.
        """
        width = len(self.labels[0]) if self.labels else 1
        rows = []
        for label, value in zip(self.labels, self.values):
            row = {f"i{k}": label[k] for k in range(width)}
            row['re'] = float(value.real)
            row['im'] = float(value.imag)
            rows.append(row)
        return pd.DataFrame(rows)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'frame_id': self.frame_id,
            'family': self.family,
            'index_scheme': self.index_scheme.value,
            'labels': [list(label) for label in self.labels],
            'values': [[float(v.real), float(v.imag)] for v in self.values],
            'total': [self.total.real, self.total.imag],
        }


class NegativityParts(BaseModel):
    """Negative-real and imaginary contributions to the total negativity."""
    model_config = ConfigDict(frozen=True)

    negative_real: float = Field(..., ge=0.0)
    imaginary: float = Field(..., ge=0.0)

    @property
    def total(self) -> float:
        return self.negative_real + self.imaginary


class ReconstructionNegativity(BaseModel):
    """Most negative eigenvalue over the Hermitian duals R(i)."""
    model_config = ConfigDict(frozen=True)

    min_eigenvalue: Optional[float] = Field(
        None,
        description="None when no dual is Hermitian"
    )
    argmin_index: Optional[List[int]] = None
    non_hermitian_duals: List[List[int]] = Field(
        default_factory=list,
        description="Labels of duals excluded because they are not Hermitian"
    )


class TomographyRun(BaseModel):
    """
    One simulated linear-inversion tomography experiment.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    frame_id: str
    true_state: DensityOperator
    shots: int = Field(..., gt=0)
    counts: List[int]
    estimate: Operator = Field(
        ...,
        description="Linear-inversion estimate, not projected onto states"
    )
    trace_distance: float = Field(..., ge=0.0)
    min_eigenvalue: float
    seed: int

    @model_validator(mode='after')
    def validate_counts(self):
        if sum(self.counts) != self.shots:
            raise ValueError(f"counts sum to {sum(self.counts)}, expected {self.shots}")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")
        return self

    @property
    def frequencies(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.shots

    def counts_dataframe(self, labels: Optional[List[Tuple[int, ...]]] = None) -> pd.DataFrame:
        labels = labels or [(k,) for k in range(len(self.counts))]
        return pd.DataFrame({
            'index': [",".join(str(k) for k in label) for label in labels],
            'count': self.counts,
            'frequency': self.frequencies,
        })

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'frame_id': self.frame_id,
            'shots': self.shots,
            'seed': self.seed,
            'counts': list(self.counts),
            'true_state': self.true_state.to_json_dict(),
            'estimate': self.estimate.to_json_dict(),
            'trace_distance': self.trace_distance,
            'min_eigenvalue': self.min_eigenvalue,
        }
