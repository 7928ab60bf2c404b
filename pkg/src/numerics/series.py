"""
Series oracles
Ascending power series and Hankel asymptotic series for J, Y and K of integer
order. They are independent of scipy.special and exist to check it.
"""
from math import factorial, log, pi, sqrt, cos, sin
from typing import Callable, Tuple

import numpy as np
from scipy.optimize import bisect

EULER_GAMMA = 0.57721566490153286
MAX_TERMS = 300
# Series below this argument, asymptotic expansion above
SERIES_SWITCHOVER = 12.0


def _digamma_int(m: int) -> float:
    """psi(m) for positive integer m"""
    return -EULER_GAMMA + sum(1.0 / k for k in range(1, m))


def bessel_j_series(order: int, x: float) -> float:
    """J_n(x) = sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)"""
    half = x / 2.0
    term = half ** order / factorial(order)
    total = term
    for k in range(1, MAX_TERMS):
        term *= -(half * half) / (k * (k + order))
        total += term
        if abs(term) < 1e-17 * max(abs(total), 1e-300) and k > order + half:
            break
    return total


def bessel_i_series(order: int, x: float) -> float:
    half = x / 2.0
    term = half ** order / factorial(order)
    total = term
    for k in range(1, MAX_TERMS):
        term *= (half * half) / (k * (k + order))
        total += term
        if term < 1e-17 * total:
            break
    return total


def bessel_y_series(order: int, x: float) -> float:
    """Y_n for integer n >= 0 and x > 0 from the ascending series with the log term"""
    half = x / 2.0
    finite = 0.0
    for k in range(order):
        finite += factorial(order - k - 1) / factorial(k) * half ** (2 * k - order)

    tail = 0.0
    power = half ** order / factorial(order)  # (x/2)^(n+2k) / (k! (n+k)!) at k = 0
    for k in range(MAX_TERMS):
        if k > 0:
            power *= -(half * half) / (k * (k + order))
        term = (_digamma_int(k + 1) + _digamma_int(order + k + 1)) * power
        tail += term
        if k > order + half and abs(term) < 1e-17 * max(abs(tail), 1e-300):
            break

    return -finite / pi + (2.0 / pi) * log(half) * bessel_j_series(order, x) - tail / pi


def bessel_k_series(order: int, x: float) -> float:
    """K_n for integer n >= 0, accurate for small and moderate x (cancellation grows like e^(2x))"""
    half = x / 2.0
    finite = 0.0
    for k in range(order):
        finite += (-1) ** k * factorial(order - k - 1) / factorial(k) * half ** (2 * k - order)

    tail = 0.0
    power = half ** order / factorial(order)
    for k in range(MAX_TERMS):
        if k > 0:
            power *= (half * half) / (k * (k + order))
        term = (_digamma_int(k + 1) + _digamma_int(order + k + 1)) * power
        tail += term
        if k > order + half and term < 1e-17 * abs(tail):
            break

    sign = (-1) ** order
    return 0.5 * finite - sign * log(half) * bessel_i_series(order, x) + sign * 0.5 * tail


def hankel_asymptotic_pq(order: int, x: float) -> Tuple[float, float]:
    """P and Q of the Hankel expansion, summed up to the smallest term"""
    mu = 4.0 * order * order
    p, q = 0.0, 0.0
    a = 1.0  # a_k(n) / x^k
    previous = float("inf")
    for k in range(MAX_TERMS):
        if k > 0:
            a *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        size = abs(a)
        if size > previous or size == 0.0:
            break
        previous = size
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p += sign * a
        else:
            q += sign * a
    return p, q


def bessel_jy_asymptotic(order: int, x: float) -> Tuple[float, float]:
    p, q = hankel_asymptotic_pq(order, x)
    chi = x - (order / 2.0 + 0.25) * pi
    amp = sqrt(2.0 / (pi * x))
    return amp * (p * cos(chi) - q * sin(chi)), amp * (p * sin(chi) + q * cos(chi))


def bessel_j_oracle(order: int, x: float) -> float:
    if abs(x) <= SERIES_SWITCHOVER:
        return bessel_j_series(order, x)
    value = bessel_jy_asymptotic(order, abs(x))[0]
    return value if x > 0 or order % 2 == 0 else -value


def bessel_y_oracle(order: int, x: float) -> float:
    if x <= SERIES_SWITCHOVER:
        return bessel_y_series(order, x)
    return bessel_jy_asymptotic(order, x)[1]


def hankel2_oracle(order: int, x: float) -> complex:
    return complex(bessel_j_oracle(order, x), -bessel_y_oracle(order, x))


def find_root(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-14) -> float:
    """Bracketed root by bisection"""
    return float(bisect(f, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200))
