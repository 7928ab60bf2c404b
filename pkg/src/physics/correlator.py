"""
Electric-field correlator
S_11 = -d^2 D/dt^2 by differentiation under the integral, by finite differences
of the quadrature propagator and by closed forms; the general S_ij operator
(d_i d_j - delta_ij d_t^2)(P(x2) D) by quadrature.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from src.core.config import CONF
from src.core.errors import DomainError, FrameRequired
from src.numerics.differences import guard_levels, richardson, second_difference
from src.numerics.quadrature import QuadratureSpec
from src.numerics.special_functions import KernelBasis, kernel
from src.physics.geometry import Regime, Waveguide, classify_interval, lowest_cutoff
from src.physics.propagator import (
    closed_form_argument,
    evanescent_integral,
    evanescent_integrals,
    phase_factor,
)

SPATIAL_INDICES = (1, 2, 3)


class CorrelatorMethod(str, Enum):
    QUADRATURE = "quadrature"
    FINITE_DIFFERENCE = "finite_difference"
    CLOSED_PAPER_PRINTED = "closed_paper_printed"
    CLOSED_REDERIVED = "closed_rederived"


class ClosedVariant(str, Enum):
    PAPER_PRINTED = "paper_printed"
    REDERIVED = "rederived"


@dataclass(frozen=True)
class CorrelatorSample:
    t: float
    r: float
    regime: Regime
    value: complex
    method: CorrelatorMethod
    i: int = 1
    j: int = 1
    basis: Optional[KernelBasis] = None
    error_estimate: Optional[float] = None


@dataclass(frozen=True)
class FiniteDifferenceLevels:
    """S_11 estimates at steps h and h/2 plus their Richardson combination"""
    h: float
    coarse: complex
    fine: complex
    extrapolated: complex


def _check_quadrant(t: float, r: float) -> None:
    if t < 0 or r < 0:
        raise DomainError(f"need t >= 0 and r >= 0, got t={t}, r={r}")


def default_step(wg: Waveguide, spec: QuadratureSpec) -> float:
    """h = abs_tol^(1/4) * max(1, 1/w_c)"""
    return spec.abs_tol ** CONF.fd_step_exponent * max(1.0, 1.0 / lowest_cutoff(wg))


def s11_quadrature(
    wg: Waveguide,
    t: float,
    r: float,
    spec: Optional[QuadratureSpec] = None,
    eps_light: float = 0.0,
) -> CorrelatorSample:
    """(1/4pi) int (w_c cos)^2 exp(-i w_c t cos - w_c r sin) dtheta"""
    _check_quadrant(t, r)
    omega_c = lowest_cutoff(wg)
    result = evanescent_integral(
        wg, t, r, spec or QuadratureSpec(), multiplier=lambda th: (omega_c * math.cos(th)) ** 2
    )
    return CorrelatorSample(
        t=t,
        r=r,
        regime=classify_interval(t, r, eps_light),
        value=result.value,
        method=CorrelatorMethod.QUADRATURE,
        error_estimate=result.error_estimate,
    )


def s11_difference_levels(
    wg: Waveguide,
    t: float,
    r: float,
    spec: Optional[QuadratureSpec] = None,
    h: Optional[float] = None,
    rel_tol: float = CONF.fd_rel_tol,
) -> FiniteDifferenceLevels:
    """
    -D'' at steps h and h/2 from the five stencil points t, t +- h/2, t +- h, all
    integrated over one subdivision tree. The t - h point may be negative.
    """
    spec = spec or QuadratureSpec()
    h = default_step(wg, spec) if h is None else h
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")

    stencil = [(t - h, r), (t, r), (t + h, r), (t - h / 2, r), (t + h / 2, r)]
    d_m, d_0, d_p, d_mh, d_ph = evanescent_integrals(wg, stencil, spec).values

    coarse = -second_difference(d_m, d_0, d_p, h)
    fine = -second_difference(d_mh, d_0, d_ph, h / 2)
    largest = max(abs(d_m), abs(d_0), abs(d_p))
    guard_levels(coarse, fine, largest, h, rel_tol)
    return FiniteDifferenceLevels(h=h, coarse=complex(coarse), fine=complex(fine),
                                  extrapolated=complex(richardson(coarse, fine)))


def s11_finite_difference(
    wg: Waveguide,
    t: float,
    r: float,
    spec: Optional[QuadratureSpec] = None,
    h: Optional[float] = None,
    extrapolate: bool = False,
    eps_light: float = 0.0,
) -> CorrelatorSample:
    """-[D(t+h) - 2D(t) + D(t-h)]/h^2 of the quadrature D; StepTooSmall when the h and h/2 levels disagree through roundoff."""
    _check_quadrant(t, r)
    levels = s11_difference_levels(wg, t, r, spec, h)
    return CorrelatorSample(
        t=t,
        r=r,
        regime=classify_interval(t, r, eps_light),
        value=levels.extrapolated if extrapolate else levels.coarse,
        method=CorrelatorMethod.FINITE_DIFFERENCE,
    )


def _s11_rederived(wg: Waveguide, t: float, r: float, basis: KernelBasis, spec: Optional[QuadratureSpec]) -> complex:
    omega_c = lowest_cutoff(wg)
    if t != 0 and r != 0:
        raise FrameRequired(
            f"rederived closed form needs t == 0 or r == 0, got t={t}, r={r}; boost with rest_frame first"
        )
    if r == 0:
        z = omega_c * t
        return (omega_c ** 2 / 8.0) * (kernel(1, z, basis, spec) / z - kernel(2, z, basis, spec))
    return (1j * omega_c / (8.0 * r)) * kernel(1, -1j * omega_c * r, basis, spec)


def _s11_paper_printed(wg: Waveguide, t: float, r: float, basis: KernelBasis, spec: Optional[QuadratureSpec]) -> complex:
    # Printed coefficients kept as they are, the bare factor t included
    omega_c = lowest_cutoff(wg)
    z = closed_form_argument(wg, t, r)
    proper = abs(z) / omega_c
    bracket = kernel(1, z, basis, spec) - t * kernel(2, z, basis, spec)
    if z.imag == 0:
        return omega_c / (8.0 * proper) * bracket
    return 1j * omega_c / (8.0 * proper) * bracket


def s11_closed(
    wg: Waveguide,
    t: float,
    r: float,
    variant: ClosedVariant = ClosedVariant.REDERIVED,
    basis: KernelBasis = KernelBasis.STANDARD_HANKEL,
    spec: Optional[QuadratureSpec] = None,
    eps_light: float = 0.0,
) -> CorrelatorSample:
    """
    Closed-form S_11.

    rederived: (w_c^2/8)[k_1(z)/z - k_2(z)] at r = 0 with z = w_c t, and
    (i w_c/(8r)) k_1(-i w_c r) at t = 0. paper_printed: the published bracket
    [k_1 - t k_2] with prefactor w_c/(8s) (times i when spacelike), any frame.
    """
    _check_quadrant(t, r)
    variant = ClosedVariant(variant)
    basis = KernelBasis(basis)
    # Raises LightconeSingular on the cone
    closed_form_argument(wg, t, r, eps_light)

    if variant is ClosedVariant.REDERIVED:
        value = _s11_rederived(wg, t, r, basis, spec)
        method = CorrelatorMethod.CLOSED_REDERIVED
    else:
        value = _s11_paper_printed(wg, t, r, basis, spec)
        method = CorrelatorMethod.CLOSED_PAPER_PRINTED

    return CorrelatorSample(
        t=t,
        r=r,
        regime=classify_interval(t, r, eps_light),
        value=complex(value),
        method=method,
        basis=basis,
    )


def s_ij_multiplier(wg: Waveguide, i: int, j: int):
    """theta -> kappa_i kappa_j + delta_ij w^2 with kappa = (0, i pi/b2, -w_c sin), w = w_c cos"""
    for index in (i, j):
        if index not in SPATIAL_INDICES:
            raise DomainError(f"spatial index {index!r} not in {SPATIAL_INDICES}")
    omega_c = lowest_cutoff(wg)
    transverse = 1j * math.pi / wg.b2

    def kappa(index: int, theta: float) -> complex:
        if index == 1:
            return 0.0
        if index == 2:
            return transverse
        return -omega_c * math.sin(theta)

    def multiplier(theta: float) -> complex:
        value = kappa(i, theta) * kappa(j, theta)
        if i == j:
            value += (omega_c * math.cos(theta)) ** 2
        return value

    return multiplier


def s_ij_quadrature(
    wg: Waveguide,
    t: float,
    r: float,
    x2_offset: float = 0.0,
    i: int = 1,
    j: int = 1,
    spec: Optional[QuadratureSpec] = None,
    eps_light: float = 0.0,
) -> CorrelatorSample:
    """(d_i d_j - delta_ij d_t^2) applied to P(x2) D under the integral sign."""
    _check_quadrant(t, r)
    multiplier = s_ij_multiplier(wg, i, j)
    result = evanescent_integral(wg, t, r, spec or QuadratureSpec(), multiplier=multiplier)
    return CorrelatorSample(
        t=t,
        r=r,
        regime=classify_interval(t, r, eps_light),
        value=phase_factor(wg, x2_offset) * result.value,
        method=CorrelatorMethod.QUADRATURE,
        i=i,
        j=j,
        error_estimate=result.error_estimate,
    )


def s11_asymptotic_model(wg: Waveguide, regime: Regime, coordinate: float) -> complex:
    """
    Unnormalized large-separation shape with u = w_c * coordinate:
    u^(-1/2) exp(-iu) timelike, u^(-3/2) exp(-u) spacelike.
    """
    if not coordinate > 0:
        raise DomainError(f"coordinate must be positive, got {coordinate}")
    u = lowest_cutoff(wg) * coordinate
    regime = Regime(regime)
    if regime is Regime.TIMELIKE:
        return complex(u ** -0.5 * complex(math.cos(u), -math.sin(u)))
    if regime is Regime.SPACELIKE:
        return complex(u ** -1.5 * math.exp(-u))
    raise DomainError("no asymptotic model on the light cone")


def paper_kernel_boundary_term(wg: Waveguide, r: float) -> float:
    """
    w_c/(4 pi r): s11_quadrature(0, r) minus the rederived paper_kernel closed
    form at t = 0 (boundary term of the integration by parts in theta).
    """
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    return lowest_cutoff(wg) / (4.0 * math.pi * r)
