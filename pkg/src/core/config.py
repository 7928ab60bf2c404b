"""
Configuration
Library defaults (CONF) and the validated run configuration used by the CLI
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.core.errors import ConfigError
from src.core.workers import default_worker_count
from src.numerics.quadrature import QuadratureSpec
from src.numerics.special_functions import KernelBasis


@dataclass(frozen=True)
class Config:
    # Waveguide (natural units, hbar = c = 1)
    b1: float = 1.0
    b2: float = 2.0
    # Light-cone classification tolerance; 0 means exact sign test
    eps_light: float = 0.0
    # Finite differences: h = abs_tol ** fd_step_exponent * max(1, 1/omega_c)
    fd_step_exponent: float = 0.25
    fd_rel_tol: float = 1e-6
    # Fit windows in units of 1/omega_c
    fit_window: Tuple[float, float] = (5.0, 30.0)
    oscillation_window: Tuple[float, float] = (10.0, 60.0)
    fit_points: int = 251
    oscillation_points: int = 501
    # Output
    precision: int = 17


CONF = Config()

QUANTITIES = ("D", "S11")
METHODS = (
    "quadrature",
    "quadrature_rest_frame",
    "finite_difference",
    "closed",
    "closed_paper_printed",
    "closed_rederived",
)


def _split_pair(value: Any) -> Any:
    if isinstance(value, str):
        parts = [p for p in value.replace(":", ",").split(",") if p.strip()]
        if len(parts) != 2:
            raise ValueError("expected two comma-separated numbers, e.g. '5,30'")
        return tuple(float(p) for p in parts)
    return value


class RunConfig(BaseModel):
    """Validated configuration for one CLI run"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    b1: float = Field(CONF.b1, gt=0)
    b2: float = Field(CONF.b2, gt=0)

    # Grid
    t_min: float = Field(0.0, ge=0)
    t_max: float = Field(10.0, ge=0)
    t_steps: int = Field(11, ge=1)
    r_min: float = Field(0.0, ge=0)
    r_max: float = Field(10.0, ge=0)
    r_steps: int = Field(11, ge=1)

    # Quadrature
    abs_tol: float = Field(QuadratureSpec.model_fields["abs_tol"].default, gt=0, lt=1)
    rel_tol: float = Field(QuadratureSpec.model_fields["rel_tol"].default, gt=0, lt=1)
    max_subdivisions: int = Field(QuadratureSpec.model_fields["max_subdivisions"].default, ge=1, le=10**6)
    tail_bound_tol: float = Field(QuadratureSpec.model_fields["tail_bound_tol"].default, gt=0)

    # Fitting
    fit_window: Tuple[float, float] = CONF.fit_window
    oscillation_window: Tuple[float, float] = CONF.oscillation_window
    fit_points: int = Field(CONF.fit_points, ge=1)
    oscillation_points: int = Field(CONF.oscillation_points, ge=1)

    # Evaluation
    eps_light: float = Field(CONF.eps_light, ge=0)
    quantity: str = "D"
    method: str = "quadrature"
    basis: KernelBasis = KernelBasis.STANDARD_HANKEL

    # Cutoff table extents
    max_r: int = Field(2, ge=0)
    max_s: int = Field(2, ge=1)

    # Output
    output_format: str = "csv"
    precision: int = Field(CONF.precision, ge=6, le=17)
    workers: int = Field(default_factory=default_worker_count, ge=1)

    @field_validator("fit_window", "oscillation_window", mode="before")
    @classmethod
    def parse_window(cls, v):
        return _split_pair(v)

    @field_validator("quantity")
    @classmethod
    def validate_quantity(cls, v):
        if v not in QUANTITIES:
            raise ValueError(f"quantity must be one of {', '.join(QUANTITIES)}")
        return v

    @field_validator("method")
    @classmethod
    def validate_method(cls, v):
        if v not in METHODS:
            raise ValueError(f"method must be one of {', '.join(METHODS)}")
        return v

    @field_validator("output_format")
    @classmethod
    def validate_format(cls, v):
        v = v.lower()
        if v not in ("csv", "json"):
            raise ValueError("output_format must be csv or json")
        return v

    @model_validator(mode="after")
    def check_ranges(self):
        if self.b1 > self.b2:
            raise ValueError(f"b1 ({self.b1}) must not exceed b2 ({self.b2})")
        if self.t_min > self.t_max:
            raise ValueError("t_min must not exceed t_max")
        if self.r_min > self.r_max:
            raise ValueError("r_min must not exceed r_max")
        for name in ("fit_window", "oscillation_window"):
            lo, hi = getattr(self, name)
            if lo <= 0 or lo > hi:
                raise ValueError(f"{name} must satisfy 0 < min <= max")
        return self

    def quadrature_spec(self) -> QuadratureSpec:
        return QuadratureSpec(
            abs_tol=self.abs_tol,
            rel_tol=self.rel_tol,
            max_subdivisions=self.max_subdivisions,
            tail_bound_tol=self.tail_bound_tol,
        )


def _scan_config_lines(path: Path) -> Dict[str, int]:
    """Map each key to its line number; reject lines that are not key=value"""
    line_of: Dict[str, int] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"malformed line {raw.strip()!r}, expected key = value", line=lineno)
        key = line.split("=", 1)[0].strip()
        if key.startswith("export "):
            key = key[len("export "):].strip()
        if not key:
            raise ConfigError("missing key before '='", line=lineno)
        line_of[key] = lineno
    return line_of


def load_run_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Build a RunConfig from defaults, an optional flat key=value file and flag overrides.
    Flags win over the file.
    """
    values: Dict[str, Any] = {}
    line_of: Dict[str, int] = {}

    if path:
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file not found: {path}")
        line_of = _scan_config_lines(p)
        for key, value in dotenv_values(p).items():
            if value is None or value == "":
                raise ConfigError("missing value", field=key, line=line_of.get(key))
            values[key] = value

    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
            line_of.pop(key, None)

    try:
        return RunConfig(**values)
    except ValidationError as e:
        err = e.errors()[0]
        field = str(err["loc"][0]) if err.get("loc") else None
        raise ConfigError(err["msg"], field=field, line=line_of.get(field) if field else None) from e
