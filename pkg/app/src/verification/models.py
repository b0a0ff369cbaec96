"""
Data models for verification results and command reports using Pydantic for
validation and type safety.
"""

import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..core.models import Tolerance


def _non_finite_paths(value: Any, path: str = "results") -> List[str]:
    if isinstance(value, bool) or value is None:
        return []
    if isinstance(value, (int, float)):
        return [] if math.isfinite(value) else [path]
    if isinstance(value, dict):
        return [p for key, item in value.items() for p in _non_finite_paths(item, f"{path}.{key}")]
    if isinstance(value, (list, tuple)):
        return [p for k, item in enumerate(value) for p in _non_finite_paths(item, f"{path}[{k}]")]
    return []


class CheckResult(BaseModel):
    """
    Outcome of one numerical check, e.g. the SWAP identity for one frame.
    """

    model_config = ConfigDict(frozen=True)

    tag: str = Field(
        ...,
        description="Check tag such as 'eq-swap'"
    )

    name: str = Field(
        ...,
        description="What was checked, e.g. 'phase-point-d3'"
    )

    passed: bool = Field(
        ...,
        description="Whether every residual is within tolerance"
    )

    skipped: bool = Field(
        False,
        description="True when no input applies to the requested dimensions"
    )

    residual: Optional[float] = Field(
        None,
        description="Worst residual of the check"
    )

    details: Dict[str, Any] = Field(
        default_factory=dict,
        description="Additional witnesses and values"
    )

    @field_validator('residual')
    @classmethod
    def validate_residual(cls, v):
        if v is not None and not math.isfinite(v):
            raise ValueError(f"residual must be finite, got {v}")
        return v

    @property
    def sort_key(self):
        return (self.tag, self.name)


class RunReport(BaseModel):
    """
    Machine-readable result of one CLI command.

    Reports for identical inputs and seeds are identical apart from
    ``wall_time_ms``.
    """

    model_config = ConfigDict(frozen=True)

    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    results: Any = Field(
        ...,
        description="Nested residuals, verdicts and tables"
    )
    tolerance_used: Tolerance
    seed: Optional[int] = None
    wall_time_ms: int = Field(..., ge=0)

    @field_validator('results')
    @classmethod
    def validate_finite(cls, v):
        bad = _non_finite_paths(v)
        if bad:
            raise ValueError(f"non-finite numbers at {', '.join(bad[:5])}")
        return v

    @property
    def checks(self) -> List[CheckResult]:
        if isinstance(self.results, dict) and 'checks' in self.results:
            return [CheckResult.model_validate(c) for c in self.results['checks']]
        return []

    @property
    def all_passed(self) -> bool:
        return all(c.passed or c.skipped for c in self.checks)

    def summary(self) -> Dict[str, int]:
        checks = self.checks
        return {
            'total': len(checks),
            'passed': sum(1 for c in checks if c.passed and not c.skipped),
            'failed': sum(1 for c in checks if not c.passed and not c.skipped),
            'skipped': sum(1 for c in checks if c.skipped),
        }

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode='json')


class SuiteContext(BaseModel):
    """Inputs shared by every check of one ``verify`` run."""

    model_config = ConfigDict(frozen=True)

    dims: List[int] = Field(..., min_length=1, description="Hilbert space dimensions to check")
    frame: Optional[str] = Field(None, description="Restrict frame checks to one builtin")
    tol: Tolerance
    seed: int = Field(..., ge=0)

    @field_validator('dims')
    @classmethod
    def validate_dims(cls, v):
        if any(d < 2 for d in v):
            raise ValueError(f"dimensions must be at least 2, got {v}")
        return sorted(set(v))
