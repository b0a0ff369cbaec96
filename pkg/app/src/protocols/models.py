"""
Data models for teleportation and cloning results using Pydantic for
validation and type safety.
"""

from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..core.models import DensityOperator, Operator, Tolerance


class TeleportationOutcome(BaseModel):
    """
    Result of one Bell-measurement outcome m = (q, p) on systems A and R.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    outcome_m: List[int] = Field(
        ...,
        description="Outcome label (q, p)",
        min_length=2,
        max_length=2
    )

    probability: float = Field(..., ge=0.0)

    conditional_remote: DensityOperator = Field(
        ...,
        description="State of B given m, before correction (from exact projection)"
    )

    frame_sum_remote: Optional[Operator] = Field(
        None,
        description="Same state from the phase-point frame sum; None when d is not an odd prime"
    )

    path_disagreement: Optional[float] = Field(
        None,
        description="||projection - frame sum||_F"
    )

    correction: Operator = Field(
        ...,
        description="Weyl unitary W(q, p)^dagger undoing the shift"
    )

    corrected_trace_distance: float = Field(
        ...,
        description="Trace distance between the corrected remote state and the input",
        ge=0.0
    )

    fidelity_after_correction: Optional[float] = Field(
        None,
        description="<psi| U rho_B U^dagger |psi>, for pure inputs only"
    )

    @property
    def frame_sum_applicable(self) -> bool:
        return self.frame_sum_remote is not None

    @property
    def worst_residual(self) -> float:
        """Largest of the corrected distance and the projection / frame-sum disagreement."""
        return max(self.corrected_trace_distance, self.path_disagreement or 0.0)

    def passed(self, tol: Tolerance) -> bool:
        return self.worst_residual <= tol.absolute

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'outcome_m': list(self.outcome_m),
            'probability': self.probability,
            'conditional_remote': self.conditional_remote.to_json_dict(),
            'frame_sum_applicable': self.frame_sum_applicable,
            'path_disagreement': self.path_disagreement,
            'correction': self.correction.to_json_dict(),
            'corrected_trace_distance': self.corrected_trace_distance,
            'fidelity_after_correction': self.fidelity_after_correction,
        }


class BellShiftMatch(BaseModel):
    """Which Bell projector the shifted frame sum for m reproduces."""
    model_config = ConfigDict(frozen=True)

    shift: List[int]
    bell_label: List[int]
    residual: float = Field(..., ge=0.0)
    largest_eigenvalue: float
    second_eigenvalue: float


class BellExpansionReport(BaseModel):
    """
    Check that (1/d) sum_i lambda_i R(i) (x) R*(i + m) is a Bell projector for every m.
    """
    model_config = ConfigDict(frozen=True)

    dim: int = Field(..., ge=2)
    worst_residual: float = Field(..., ge=0.0)
    completeness_residual: float = Field(
        ...,
        description="||sum_m E(m) - I (x) I||_F",
        ge=0.0
    )
    rank_one_defect: float = Field(
        ...,
        description="max over m of |largest eigenvalue - 1| and |second eigenvalue|",
        ge=0.0
    )
    matching: List[BellShiftMatch]

    @property
    def matching_is_identity(self) -> bool:
        return all(match.shift == match.bell_label for match in self.matching)


class DiscrepancyTable(BaseModel):
    """
    Frobenius norms of D_j(R(i)) for every pair of frame indices.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    frame_id: str
    labels: List[List[int]]
    norms: np.ndarray = Field(
        ...,
        description="norms[i, j] = ||D_j(R(i))||_F"
    )
    tolerance: float

    @field_validator('norms', mode='before')
    @classmethod
    def coerce_norms(cls, v):
        array = np.array(v, dtype=float, copy=True)
        array.setflags(write=False)
        return array

    @property
    def max_norm(self) -> float:
        return float(self.norms.max())

    @property
    def all_zero(self) -> bool:
        return self.max_norm <= self.tolerance

    def to_dataframe(self) -> pd.DataFrame:
        names = [",".join(str(k) for k in label) for label in self.labels]
        return pd.DataFrame(self.norms, index=names, columns=names)


class CloneReport(BaseModel):
    """
    Optimal 1 -> 2 cloning of one input, with the ideal-copy decomposition.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    input: DensityOperator
    output_pair: Operator = Field(..., description="Two-system clone state")
    ideal_component: Operator = Field(..., description="Symmetrized ideal-copy component")
    ideal_weight: float = Field(..., description="Tr of the ideal component (1/d)")
    marginal_1: DensityOperator
    marginal_2: DensityOperator
    output_trace: float
    swap_symmetry_residual: float = Field(..., ge=0.0)
    clone_fidelity: Optional[float] = Field(
        None,
        description="<psi| marginal |psi>, for pure inputs only"
    )
    ideal_marginal_residual: float = Field(
        ...,
        description="max_k ||Tr_k(C) / Tr(C) - rho||_F",
        ge=0.0
    )
    ordering_residual: float = Field(
        ...,
        description="Distance between the two operator orderings of the ideal component",
        ge=0.0
    )
    product_distance: float = Field(
        ...,
        description="||C / Tr(C) - rho (x) rho||_F",
        ge=0.0
    )
    decomposition_residual: float = Field(..., ge=0.0)
    frame_id: Optional[str] = None
    expansion_residual: Optional[float] = None
    discrepancy_norms: List[float] = Field(default_factory=list)
    discrepancy_traces: List[float] = Field(default_factory=list)

    @property
    def worst_residual(self) -> float:
        """
        Largest deviation from the exact cloning identities.

        The marginal fidelity (d + 3) / (2(d + 1)) only enters for pure inputs
        and the frame expansion only when a complete frame was given.
        """
        d = self.input.side
        deviations = [
            abs(self.output_trace - 1.0),
            abs(self.ideal_weight - 1.0 / d),
            self.swap_symmetry_residual,
            self.ideal_marginal_residual,
            self.ordering_residual,
            self.decomposition_residual,
        ]
        if self.clone_fidelity is not None:
            deviations.append(abs(self.clone_fidelity - (d + 3) / (2 * (d + 1))))
        if self.expansion_residual is not None:
            deviations.append(self.expansion_residual)
        return max(deviations)

    def passed(self, tol: Tolerance) -> bool:
        return self.worst_residual <= tol.absolute

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            'input': self.input.to_json_dict(),
            'output_trace': self.output_trace,
            'ideal_weight': self.ideal_weight,
            'swap_symmetry_residual': self.swap_symmetry_residual,
            'clone_fidelity': self.clone_fidelity,
            'marginal_1': self.marginal_1.to_json_dict(),
            'marginal_2': self.marginal_2.to_json_dict(),
            'ideal_marginal_residual': self.ideal_marginal_residual,
            'ordering_residual': self.ordering_residual,
            'product_distance': self.product_distance,
            'decomposition_residual': self.decomposition_residual,
            'frame_id': self.frame_id,
            'expansion_residual': self.expansion_residual,
            'discrepancy_norms': list(self.discrepancy_norms),
            'discrepancy_traces': list(self.discrepancy_traces),
        }
