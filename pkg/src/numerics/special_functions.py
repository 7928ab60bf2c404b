"""
Special functions
Bessel J, Y, K and the Hankel function H^(2) of orders 0, 1, 2 on the two rays
the propagator needs (positive real axis and z = -ix), the finite-interval
integral kernel P_nu with its recurrences, the completion term linking P_0 to
H_0^(2), and the large-argument form.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from src.core.errors import ArgumentTooSmall, DomainError, OrderUnsupported, RayUnsupported
from src.numerics.quadrature import (
    QuadratureSpec,
    integrate_finite_batch,
    integrate_semi_infinite,
)

SUPPORTED_ORDERS = (0, 1, 2)
MAX_J_ARGUMENT = 1e4
ASYMPTOTIC_MIN_ARGUMENT = 5.0

# H_nu^(2)(-ix) = c_nu * K_nu(x), c_nu = (2/pi) * i^(nu+1); checked by measure_connection_constant
CONNECTION_CONSTANTS = {
    0: 2j / np.pi,
    1: -2.0 / np.pi + 0j,
    2: -2j / np.pi,
}


class KernelBasis(str, Enum):
    STANDARD_HANKEL = "standard_hankel"
    PAPER_KERNEL = "paper_kernel"


class Ray(str, Enum):
    REAL = "real"
    NEGATIVE_IMAGINARY = "negative_imaginary"


def _check_order(order: int) -> int:
    if isinstance(order, bool) or int(order) != order or int(order) not in SUPPORTED_ORDERS:
        raise OrderUnsupported(f"order {order!r} not in {SUPPORTED_ORDERS}")
    return int(order)


def classify_ray(z: complex, allow_zero: bool = False) -> Tuple[Ray, float]:
    """Return the ray z lies on and the real coordinate along it."""
    z = complex(z)
    if z.imag == 0.0 and (z.real > 0.0 or (allow_zero and z.real == 0.0)):
        return Ray.REAL, z.real
    if z.real == 0.0 and z.imag < 0.0:
        return Ray.NEGATIVE_IMAGINARY, -z.imag
    raise RayUnsupported(f"argument {z} is neither on the positive real axis nor on z = -ix with x > 0")


# Bessel functions

def bessel_j(order: int, x: float) -> float:
    order = _check_order(order)
    if not abs(x) <= MAX_J_ARGUMENT:
        raise DomainError(f"|x| = {abs(x):g} exceeds {MAX_J_ARGUMENT:g}")
    return float(special.jv(order, x))


def bessel_y(order: int, x: float) -> float:
    order = _check_order(order)
    if not x > 0:
        raise DomainError(f"Y_{order} needs x > 0, got {x}")
    return float(special.yv(order, x))


def bessel_k(order: int, x: float) -> float:
    order = _check_order(order)
    if not x > 0:
        raise DomainError(f"K_{order} needs x > 0, got {x}")
    return float(special.kv(order, x))


def bessel_k_integral(order: int, x: float, spec: Optional[QuadratureSpec] = None) -> float:
    """K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du, by semi-infinite quadrature."""
    order = _check_order(order)
    if not x > 0:
        raise DomainError(f"K_{order} needs x > 0, got {x}")
    spec = spec or QuadratureSpec()

    def integrand(u: float) -> complex:
        # cosh(nu u) folded into the exponent so large u underflows instead of overflowing
        c = -x * np.cosh(u)
        return 0.5 * (np.exp(c + order * u) + np.exp(c - order * u))

    return integrate_semi_infinite(integrand, 0.0, spec).value.real


# Hankel function of the second kind

def hankel2(order: int, z: complex) -> complex:
    """
    H_nu^(2)(z) for z > 0 real (J - iY) and for z = -ix (c_nu K_nu(x)).
    """
    order = _check_order(order)
    ray, x = classify_ray(z)
    if ray is Ray.REAL:
        return complex(special.jv(order, x), -special.yv(order, x))
    return CONNECTION_CONSTANTS[order] * special.kv(order, x)


def hankel2_asymptotic(order: int, z: complex) -> complex:
    """Leading large-argument form sqrt(2/(pi z)) exp(-i(z - pi nu/2 - pi/4)), principal sqrt."""
    order = _check_order(order)
    classify_ray(z)
    z = complex(z)
    if abs(z) < ASYMPTOTIC_MIN_ARGUMENT:
        raise ArgumentTooSmall(f"|z| = {abs(z):g} below {ASYMPTOTIC_MIN_ARGUMENT:g}")
    return complex(np.sqrt(2.0 / (np.pi * z)) * np.exp(-1j * (z - np.pi * order / 2.0 - np.pi / 4.0)))


@dataclass(frozen=True)
class ConnectionMeasurement:
    order: int
    xs: Tuple[float, ...]
    ratios: Tuple[complex, ...]  # large-argument form on z = -ix divided by K_nu(x)
    estimate: complex            # ratio extrapolated to x -> inf (fit c + d/x)
    library_ratio: complex       # scipy's complex-argument H^(2)(-ix) / K_nu(x) at max(xs)
    frozen: complex

    @property
    def deviation(self) -> float:
        return abs(self.estimate - self.frozen) / abs(self.frozen)


def measure_connection_constant(order: int, xs: Iterable[float] = (10.0, 20.0, 30.0)) -> ConnectionMeasurement:
    """
    Match the large-argument form on the ray z = -ix against K_nu(x).

    The ratio tends to c_nu with an O(1/x) correction, removed by a least-squares
    fit of c + d/x over the sample points.
    """
    order = _check_order(order)
    xs = tuple(float(x) for x in xs)
    if len(xs) < 2:
        raise DomainError("need at least two sample points")
    ratios = tuple(hankel2_asymptotic(order, -1j * x) / special.kv(order, x) for x in xs)

    design = np.column_stack([np.ones(len(xs)), 1.0 / np.asarray(xs)])
    rhs = np.asarray(ratios, dtype=complex)
    coef, *_ = np.linalg.lstsq(design.astype(complex), rhs, rcond=None)

    x_max = max(xs)
    library = complex(special.hankel2(order, -1j * x_max)) / special.kv(order, x_max)
    return ConnectionMeasurement(
        order=order,
        xs=xs,
        ratios=ratios,
        estimate=complex(coef[0]),
        library_ratio=library,
        frozen=CONNECTION_CONSTANTS[order],
    )


# Finite-interval kernel and its completion

def paper_kernel_moments(zs: Sequence[complex], spec: QuadratureSpec) -> np.ndarray:
    """
    (2/pi) * int_0^{pi/2} m(theta) exp(-i z sin(theta)) dtheta for m = 1, i sin, sin^2,
    shape (3, len(zs)). All moments and arguments share one subdivision tree.
    """
    zs = np.asarray(zs, dtype=complex).ravel()

    def integrand(theta: float) -> np.ndarray:
        s = np.sin(theta)
        e = np.exp(-1j * zs * s)
        return np.concatenate([e, 1j * s * e, s * s * e])

    batch = integrate_finite_batch(integrand, 0.0, np.pi / 2.0, spec)
    return (2.0 / np.pi) * batch.values.reshape(3, zs.size)


def paper_kernel_values(order: int, zs: Sequence[complex], spec: Optional[QuadratureSpec] = None) -> np.ndarray:
    """
    P_0(z) = (2/pi) int_0^{pi/2} exp(-i z sin(theta)) dtheta,
    P_1 = -dP_0/dz, P_2 = P_1/z - dP_1/dz (from z^-1 P_2 = -d(z^-1 P_1)/dz),
    derivatives taken under the integral. Evaluated at every z on one tree, so
    differences between neighbouring arguments carry little quadrature noise.
    """
    order = _check_order(order)
    zs = np.asarray(zs, dtype=complex).ravel()
    for z in zs:
        if z.imag != 0.0:
            classify_ray(z)
        if order == 2 and z == 0:
            raise DomainError("P_2 is singular at z = 0")
    spec = spec or QuadratureSpec()

    p0, p1, m2 = paper_kernel_moments(zs, spec)
    if order == 0:
        return p0
    if order == 1:
        return p1
    return p1 / zs - m2


def paper_kernel(order: int, z: complex, spec: Optional[QuadratureSpec] = None) -> complex:
    return complex(paper_kernel_values(order, [z], spec)[0])


def hankel_completion(z: complex, spec: Optional[QuadratureSpec] = None) -> complex:
    """
    C(z) = (2i/pi) int_0^inf exp(-z sinh u) du, so that P_0(z) + C(z) = H_0^(2)(z) for z > 0.

    Only the positive real axis is supported; on z = -ix the integrand does not decay.
    """
    ray, x = classify_ray(z)
    if ray is not Ray.REAL:
        raise RayUnsupported("hankel_completion needs a real positive argument")
    spec = spec or QuadratureSpec()
    result = integrate_semi_infinite(lambda u: np.exp(-x * np.sinh(u)), 0.0, spec)
    return complex(2j / np.pi * result.value.real)


def kernel(order: int, z: complex, basis: KernelBasis, spec: Optional[QuadratureSpec] = None) -> complex:
    """Dispatch to hankel2 or paper_kernel by basis."""
    if KernelBasis(basis) is KernelBasis.STANDARD_HANKEL:
        return hankel2(order, z)
    return paper_kernel(order, z, spec)
