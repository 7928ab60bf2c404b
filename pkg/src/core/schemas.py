"""
Report and Record Schemas
Every object the CLI serializes, validated with pydantic
"""
import math
import statistics
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, model_validator


# ==================== Grid records ====================

class ScanRecord(BaseModel):
    """One grid point of a scan"""
    t: float
    r: float
    regime: str
    re: Optional[float] = None
    im: Optional[float] = None
    method: str
    basis: str = ""
    status: Literal["ok", "singular", "error"] = "ok"
    message: Optional[str] = None
    omega_c_t: float
    omega_c_r: float

    @model_validator(mode="after")
    def check_value(self):
        if self.status == "ok" and (self.re is None or self.im is None):
            raise ValueError("an ok record needs both re and im")
        return self


class CutoffRow(BaseModel):
    r: int = Field(..., ge=0)
    s: int = Field(..., ge=1)
    omega: float = Field(..., gt=0)
    is_lowest: bool = False


# ==================== Fits ====================

class DecayFit(BaseModel):
    """modulus ~ amplitude * r^exponent * exp(-rate * r)"""
    amplitude: float
    rate: float
    exponent: float
    r_squared: float = Field(..., ge=0, le=1)
    window: Tuple[float, float]
    n_points: int = Field(..., ge=4)

    @model_validator(mode="after")
    def check_window(self):
        if not self.window[0] < self.window[1]:
            raise ValueError("window min must be below window max")
        return self


class OscillationFit(BaseModel):
    """value ~ t^envelope_exponent * exp(-i frequency t)"""
    frequency: float = Field(..., gt=0)
    envelope_exponent: float
    n_zero_crossings: int = Field(..., ge=4)
    window: Tuple[float, float]
    n_points: int = Field(..., ge=16)


class ModelAgreement(BaseModel):
    """|value| / |leading asymptotic shape| over the fit window"""
    amplitude: float = Field(..., gt=0, description="lower median of the ratio")
    spread: float = Field(..., ge=0, description="(max - min) / amplitude")


class FitReport(BaseModel):
    """Fit result with its input provenance"""
    regime: Literal["spacelike", "timelike"]
    evaluator: str
    basis: Optional[str] = None
    window: Tuple[float, float] = Field(..., description="fit window in units of 1/omega_c")
    n_points: int
    b1: float
    b2: float
    omega_c: float
    units: str = "hbar = c = 1"
    fit: Union[DecayFit, OscillationFit]
    model: Optional[ModelAgreement] = None


# ==================== Discrepancies ====================

class PointDiscrepancy(BaseModel):
    t: float
    r: float
    a_re: float
    a_im: float
    b_re: float
    b_im: float
    rel_diff: float = Field(..., ge=0)


class DiscrepancyReport(BaseModel):
    """Per-point relative differences between two evaluators"""
    method_a: str
    method_b: str
    grid: str
    points: List[PointDiscrepancy] = Field(..., min_length=1)
    max_rel_diff: float
    median_rel_diff: float = Field(..., description="lower median, always one of the per-point values")

    @model_validator(mode="after")
    def check_statistics(self):
        diffs = [p.rel_diff for p in self.points]
        if not math.isclose(self.max_rel_diff, max(diffs), rel_tol=1e-12, abs_tol=0.0):
            raise ValueError("max_rel_diff does not match the per-point list")
        if not math.isclose(self.median_rel_diff, statistics.median_low(diffs), rel_tol=1e-12, abs_tol=1e-300):
            raise ValueError("median_rel_diff does not match the per-point list")
        return self


# ==================== Verification ====================

CheckStatus = Literal["passed", "failed", "measured", "quadrature_failure", "error", "skipped"]


class CheckRecord(BaseModel):
    name: str
    description: str
    status: CheckStatus
    assertable: bool = True
    measured: Optional[float] = None
    tolerance: Optional[float] = None
    details: Dict[str, Any] = Field(default_factory=dict)
    table: Optional[List[Dict[str, Any]]] = None
    message: Optional[str] = None
    depends_on: List[str] = Field(default_factory=list)


class VerificationReport(BaseModel):
    b1: float
    b2: float
    omega_c: float
    units: str = "hbar = c = 1"
    quadrature: Dict[str, float]
    checks: List[CheckRecord]
    n_passed: int
    n_failed: int
    n_measured: int
    passed: bool

    @model_validator(mode="after")
    def check_counts(self):
        failing = [c for c in self.checks if c.assertable and c.status not in ("passed",)]
        if self.passed != (not failing):
            raise ValueError("passed flag disagrees with the check list")
        return self


def verification_report_schema() -> Dict[str, Any]:
    """JSON Schema of the verification report"""
    return VerificationReport.model_json_schema()
