"""
Evanescent propagator
D(t, r) = (1/4pi) int_0^{pi/2} exp(-i w_c t cos(theta) - w_c r sin(theta)) dtheta
(the q = w_c sin(theta) form of the evanescent-sector integral over q in (0, w_c))
and its closed forms (1/8) kernel_0(...) in both kernel bases.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import DomainError, LightconeSingular
from src.numerics.quadrature import (
    BatchQuadratureResult,
    QuadratureResult,
    QuadratureSpec,
    integrate_finite_batch,
)
from src.numerics.special_functions import KernelBasis, kernel
from src.physics.geometry import Regime, Waveguide, classify_interval, lowest_cutoff

Multiplier = Callable[[float], complex]

PREFACTOR = 1.0 / (4.0 * math.pi)


class EvaluationMethod(str, Enum):
    EVANESCENT_QUADRATURE = "quadrature"
    CLOSED_FORM = "closed"


@dataclass(frozen=True)
class PropagatorSample:
    t: float
    r: float
    regime: Regime
    value: complex
    method: EvaluationMethod
    basis: Optional[KernelBasis] = None
    error_estimate: Optional[float] = None


def _check_quadrant(t: float, r: float) -> None:
    if t < 0 or r < 0:
        raise DomainError(f"need t >= 0 and r >= 0, got t={t}, r={r}")


def evanescent_integrals(
    wg: Waveguide,
    points: Sequence[Tuple[float, float]],
    spec: QuadratureSpec,
    multiplier: Optional[Multiplier] = None,
) -> BatchQuadratureResult:
    """
    (1/4pi) int_0^{pi/2} m(theta) exp(-i w_c t cos - w_c r sin) dtheta at several (t, r)
    over one subdivision tree. No sign restriction on t or r.
    """
    omega_c = lowest_cutoff(wg)
    ts = np.array([p[0] for p in points], dtype=float)
    rs = np.array([p[1] for p in points], dtype=float)

    def integrand(theta: float) -> np.ndarray:
        c, s = math.cos(theta), math.sin(theta)
        values = np.exp(-1j * omega_c * ts * c - omega_c * rs * s)
        if multiplier is not None:
            values = multiplier(theta) * values
        return values

    batch = integrate_finite_batch(integrand, 0.0, math.pi / 2.0, spec)
    return BatchQuadratureResult(
        values=PREFACTOR * batch.values,
        error_estimate=PREFACTOR * batch.error_estimate,
        evaluations=batch.evaluations,
        converged=batch.converged,
    )


def evanescent_integral(
    wg: Waveguide,
    t: float,
    r: float,
    spec: QuadratureSpec,
    multiplier: Optional[Multiplier] = None,
) -> QuadratureResult:
    return evanescent_integrals(wg, [(t, r)], spec, multiplier).item(0)


def d_evanescent_quadrature(
    wg: Waveguide,
    t: float,
    r: float,
    spec: Optional[QuadratureSpec] = None,
    eps_light: float = 0.0,
) -> PropagatorSample:
    """Quadrature D(t, r); finite everywhere, the light cone included."""
    _check_quadrant(t, r)
    result = evanescent_integral(wg, t, r, spec or QuadratureSpec())
    return PropagatorSample(
        t=t,
        r=r,
        regime=classify_interval(t, r, eps_light),
        value=result.value,
        method=EvaluationMethod.EVANESCENT_QUADRATURE,
        error_estimate=result.error_estimate,
    )


def closed_form_argument(wg: Waveguide, t: float, r: float, eps_light: float = 0.0) -> complex:
    """w_c sqrt(x^2) for timelike, -i w_c sqrt(-x^2) for spacelike separations."""
    regime = classify_interval(t, r, eps_light)
    if regime is Regime.LIGHTLIKE:
        raise LightconeSingular(f"closed forms are not evaluated on the light cone (t={t}, r={r})")
    omega_c = lowest_cutoff(wg)
    proper = math.sqrt(abs((t - r) * (t + r)))
    if regime is Regime.TIMELIKE:
        return complex(omega_c * proper)
    return complex(0.0, -omega_c * proper)


def d_closed(
    wg: Waveguide,
    t: float,
    r: float,
    basis: KernelBasis = KernelBasis.STANDARD_HANKEL,
    spec: Optional[QuadratureSpec] = None,
    eps_light: float = 0.0,
) -> PropagatorSample:
    """
    (1/8) kernel_0(z) with z from closed_form_argument.

    Lightlike points raise LightconeSingular in both bases, although the
    paper_kernel value stays finite there.
    """
    _check_quadrant(t, r)
    basis = KernelBasis(basis)
    z = closed_form_argument(wg, t, r, eps_light)
    return PropagatorSample(
        t=t,
        r=r,
        regime=classify_interval(t, r, eps_light),
        value=kernel(0, z, basis, spec) / 8.0,
        method=EvaluationMethod.CLOSED_FORM,
        basis=basis,
    )


def phase_factor(wg: Waveguide, x2_offset: float) -> complex:
    """exp(i pi x2_offset / b2)"""
    return complex(np.exp(1j * math.pi * x2_offset / wg.b2))


def boost_defect(wg: Waveguide, t: float, r: float) -> complex:
    """
    (r d/dt + t d/dr) D for the half-range integral, which is not zero:
    the theta-integrand is a total derivative, leaving (i/4pi)(exp(-w_c r) - exp(-i w_c t)).
    """
    omega_c = lowest_cutoff(wg)
    return complex(1j * PREFACTOR * (np.exp(-omega_c * r) - np.exp(-1j * omega_c * t)))


def boost_generator(
    wg: Waveguide,
    t: float,
    r: float,
    spec: Optional[QuadratureSpec] = None,
    h: Optional[float] = None,
) -> complex:
    """(r d/dt + t d/dr) D by centered differences of the quadrature, one shared tree."""
    spec = spec or QuadratureSpec()
    h = h or 1e-4 * max(1.0, 1.0 / lowest_cutoff(wg))
    points = [(t + h, r), (t - h, r), (t, r + h), (t, r - h)]
    values = evanescent_integrals(wg, points, spec).values
    d_dt = (values[0] - values[1]) / (2.0 * h)
    d_dr = (values[2] - values[3]) / (2.0 * h)
    return complex(r * d_dt + t * d_dr)
