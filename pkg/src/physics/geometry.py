"""
Waveguide geometry
Cross-section, mode cutoffs, dispersion, evanescent decay constants and
spacetime-interval bookkeeping. Natural units (hbar = c = 1) throughout.
"""
import math
from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.errors import DomainError, LightlikeUnparametrizable, OmegaNotEvanescent


class Regime(str, Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"


class Waveguide(BaseModel):
    """Rectangular cross-section b1 x b2 with b1 <= b2"""
    model_config = ConfigDict(frozen=True)

    b1: float = Field(..., gt=0, description="short side")
    b2: float = Field(..., gt=0, description="long side")

    @model_validator(mode="after")
    def check_ordering(self):
        if self.b1 > self.b2:
            raise ValueError(f"b1 ({self.b1}) must not exceed b2 ({self.b2})")
        return self

    @property
    def omega_c(self) -> float:
        return lowest_cutoff(self)


class ModeIndex(BaseModel):
    model_config = ConfigDict(frozen=True)

    r: int = Field(..., ge=0)
    s: int = Field(..., ge=1)


class SpacetimeInterval(BaseModel):
    """
    Separation (t, r) along the guide axis. x2_offset is carried for callers of
    s_ij_quadrature; the scan and fit commands always use the centre line.
    """
    model_config = ConfigDict(frozen=True)

    t: float = Field(..., ge=0)
    r: float = Field(..., ge=0)
    x2_offset: float = 0.0

    @property
    def invariant_square(self) -> float:
        return self.t * self.t - self.r * self.r

    def regime(self, eps: float = 0.0) -> Regime:
        return classify_interval(self.t, self.r, eps)


def cutoff_frequency(wg: Waveguide, mode: ModeIndex) -> float:
    """omega_rs = pi * sqrt((r/b1)^2 + (s/b2)^2)"""
    return math.pi * math.hypot(mode.r / wg.b1, mode.s / wg.b2)


def lowest_cutoff(wg: Waveguide) -> float:
    return math.pi / wg.b2


def dispersion_omega(wg: Waveguide, k3: float) -> float:
    return math.hypot(lowest_cutoff(wg), k3)


def evanescent_q(wg: Waveguide, omega: float) -> float:
    """Decay constant q with k3 = iq, for 0 < omega < omega_c."""
    omega_c = lowest_cutoff(wg)
    if not 0.0 < omega < omega_c:
        raise OmegaNotEvanescent(f"omega = {omega} outside (0, {omega_c})")
    return math.sqrt((omega_c - omega) * (omega_c + omega))


def classify_interval(t: float, r: float, eps: float = 0.0) -> Regime:
    s = t * t - r * r
    if s > eps:
        return Regime.TIMELIKE
    if s < -eps:
        return Regime.SPACELIKE
    return Regime.LIGHTLIKE


def frame_parametrize(invariant_square: float, phi: float) -> Tuple[float, float]:
    """
    Boosted coordinates of an interval with the given invariant square.

    Timelike: (sqrt(x^2) cosh phi, sqrt(x^2) sinh phi);
    spacelike: (sqrt(-x^2) sinh phi, sqrt(-x^2) cosh phi). phi = 0 is the rest
    (resp. simultaneity) frame.
    """
    if invariant_square == 0:
        raise LightlikeUnparametrizable("a lightlike interval has no rest or simultaneity frame")
    if phi < 0:
        raise DomainError(f"rapidity must be non-negative, got {phi}")
    proper = math.sqrt(abs(invariant_square))
    if invariant_square > 0:
        return proper * math.cosh(phi), proper * math.sinh(phi)
    return proper * math.sinh(phi), proper * math.cosh(phi)


def rest_frame(t: float, r: float) -> Tuple[float, float]:
    """(t, r) boosted to the frame with r = 0 (timelike) or t = 0 (spacelike)."""
    return frame_parametrize(t * t - r * r, 0.0)
