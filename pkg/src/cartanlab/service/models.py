"""Request/response schemas of the verification service."""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


class SuiteParams(BaseModel):
    """Tunable parameters shared by the suites; defaults match the lab's
    desk-scale acceptance settings."""

    models: List[str] = ["cproj:2", "hproj:2", "cr:1,1", "cr:2,1"]
    m_values: List[int] = [1, 2, 3]
    complex_draws: int = Field(100, ge=1)
    quaternion_draws: int = Field(50, ge=1)
    eigen_draws: int = Field(20, ge=1)
    cr_draws: int = Field(20, ge=1)
    char_lambdas: List[str] = ["0", "1", "2", "-1"]
    k_list: List[int] = [10, 100, 1000, 10000]
    orbit_points: int = Field(200, ge=1)
    fixed_points: int = Field(50, ge=0)
    orbit_k_max: int = Field(10000, ge=1)
    orbit_tol: float = Field(1e-6, gt=0)
    flamboyance_points: int = Field(1000, ge=1)
    family_elements: int = Field(8, ge=2)
    torus_mesh: int = Field(64, ge=4)
    torus_window: int = Field(4, ge=1)
    affine_mesh: int = Field(32, ge=4)
    affine_window: int = Field(8, ge=1)
    rotation_mesh: int = Field(48, ge=4)
    witness_pairs: int = Field(10, ge=1)
    hol_word_bound: int = Field(6, ge=1)
    element_cap: int = Field(100000, ge=1)
    divergence_k_list: List[int] = [1, 2, 4, 8, 16, 32]

    @field_validator("k_list", "divergence_k_list")
    @classmethod
    def _nonempty_positive(cls, v):
        if not v:
            raise ValueError("k-list must not be empty")
        if any(k <= 0 for k in v):
            raise ValueError("k values must be positive")
        return v


class ScenarioConfig(BaseModel):
    """One suite invocation: which suite, the seed, and the parameters."""

    suite: str = "all"
    seed: int = Field(0, ge=0)
    exact: bool = False
    mesh: Optional[int] = Field(None, ge=4)
    params: SuiteParams = SuiteParams()

    @field_validator("suite")
    @classmethod
    def _known_suite(cls, v):
        from ..suites import SUITE_NAMES

        if v not in SUITE_NAMES + ["all"]:
            raise ValueError(f"unknown suite {v!r}; expected one of {SUITE_NAMES + ['all']}")
        return v


class CheckRecord(BaseModel):
    id: str
    anchor: str
    verdict: str
    inputs: Dict[str, Any] = {}
    outputs: Dict[str, Any] = {}
    residual: Optional[Any] = None


class ReportSummary(BaseModel):
    total: int
    passed: int
    failed: int


class Report(BaseModel):
    suite: str
    tool_version: str
    config: Dict[str, Any]
    checks: List[CheckRecord]
    summary: ReportSummary
