"""
Data models for the SWAP-identity checks and entangled correlation tables.
"""

from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator


class SwapIdentityReport(BaseModel):
    """
    Residuals of sum_i R(i) (x) Lambda(i) = U_SWAP and of the symmetric fill identity.

    A residual is None when the check was not evaluated, e.g. the swap
    residual of an incomplete frame, for which the rank is reported instead.
    """

    model_config = ConfigDict(frozen=True)

    frame_id: str
    rank: int = Field(..., ge=0)
    target_rank: int = Field(..., ge=1)
    residual: Optional[float] = Field(
        None,
        description="||sum_i R(i) (x) Lambda(i) - U_SWAP||_F",
        ge=0.0
    )
    fill_residual: Optional[float] = Field(
        None,
        description="||sum_i (R(i) + I) (x) Lambda(i) - (U_SWAP + I (x) I)||_F",
        ge=0.0
    )
    symmetric_projector_residual: Optional[float] = Field(
        None,
        description="||U_SWAP + I (x) I - 2 P_sym||_F",
        ge=0.0
    )
    idempotence_residual: Optional[float] = Field(
        None,
        description="||P^2 - P||_F for P = (U_SWAP + I (x) I) / 2",
        ge=0.0
    )
    symmetric_rank: Optional[int] = None
    tolerance: float

    @property
    def swap_passed(self) -> Optional[bool]:
        return None if self.residual is None else self.residual <= self.tolerance

    @property
    def fill_passed(self) -> Optional[bool]:
        return None if self.fill_residual is None else self.fill_residual <= self.tolerance

    @property
    def passed(self) -> List[Optional[bool]]:
        return [self.swap_passed, self.fill_passed]

    def to_json_dict(self) -> Dict[str, Any]:
        data = self.model_dump()
        data['passed'] = self.passed
        return data


class CorrelationTable(BaseModel):
    """
    Joint outcome probabilities P(k, l) for measuring {|a_k>} on system 1 and
    {|a_l*>} on system 2 of the maximally entangled state.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int = Field(..., ge=1)
    table: np.ndarray = Field(
        ...,
        description="d x d real matrix of joint probabilities"
    )

    @field_validator('table', mode='before')
    @classmethod
    def coerce_table(cls, v):
        array = np.array(v, dtype=float, copy=True)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError(f"correlation table must be square, got shape {array.shape}")
        array.setflags(write=False)
        return array

    @property
    def off_diagonal_mass(self) -> float:
        return float(self.table.sum() - np.trace(self.table))

    @property
    def diagonal_deviation(self) -> float:
        """max_k |P(k, k) - 1/d|"""
        return float(np.max(np.abs(np.diag(self.table) - 1.0 / self.dim)))

    def to_dataframe(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.table)
        frame.index.name = 'k'
        frame.columns = [f"l{l}" for l in range(self.dim)]
        return frame

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'dim': self.dim,
            'table': self.table.tolist(),
            'off_diagonal_mass': self.off_diagonal_mass,
            'diagonal_deviation': self.diagonal_deviation,
        }
