"""
Finite-difference stencils
Centered first and second differences, Richardson extrapolation and the
roundoff guard shared by the correlator and the verification battery.
"""
from typing import Callable

import numpy as np

from src.core.errors import DomainError, StepTooSmall

EPS = float(np.finfo(float).eps)


def _check_step(h: float) -> None:
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")


def centered_derivative(f: Callable[[float], complex], x: float, h: float) -> complex:
    """(f(x+h) - f(x-h)) / 2h"""
    _check_step(h)
    return (f(x + h) - f(x - h)) / (2.0 * h)


def second_difference(f_minus: complex, f_center: complex, f_plus: complex, h: float) -> complex:
    """(f(x+h) - 2 f(x) + f(x-h)) / h^2 from precomputed samples"""
    _check_step(h)
    return (f_plus - 2.0 * f_center + f_minus) / (h * h)


def five_point_second_difference(f: Callable[[float], complex], x: float, h: float) -> complex:
    """Fourth-order second derivative"""
    _check_step(h)
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12.0 * h * h)


def richardson(coarse: complex, fine: complex, order: int = 2) -> complex:
    """Combine estimates at h and h/2 of a method with error O(h^order)."""
    factor = 2.0 ** order
    return (factor * fine - coarse) / (factor - 1.0)


def second_difference_roundoff(max_abs_value: float, h: float) -> float:
    """Bound on the roundoff of a second difference of values of size max_abs_value."""
    return 4.0 * EPS * max_abs_value / (h * h)


def guard_levels(coarse: complex, fine: complex, max_abs_value: float, h: float, rel_tol: float) -> None:
    """
    Raise StepTooSmall when the second differences at h and h/2 disagree by more
    than rel_tol and roundoff at h/2 is large enough to account for it.
    """
    scale = max(abs(coarse), abs(fine))
    disagreement = abs(coarse - fine)
    bound = second_difference_roundoff(max_abs_value, h / 2)
    if disagreement > rel_tol * scale and bound > rel_tol * scale:
        raise StepTooSmall(
            f"levels at h = {h:g} and h/2 disagree by {disagreement:.3g} (> {rel_tol:g} x {scale:.3g}); "
            f"roundoff bound {bound:.3g}"
        )


def five_point_derivative(samples, h: float) -> complex:
    """Fourth-order first derivative from samples at x - 2h, x - h, x + h, x + 2h."""
    _check_step(h)
    f_m2, f_m1, f_p1, f_p2 = samples
    return (f_m2 - 8.0 * f_m1 + 8.0 * f_p1 - f_p2) / (12.0 * h)
