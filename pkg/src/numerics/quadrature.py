"""
Adaptive quadrature
Complex integrands on finite and semi-infinite intervals. Real and imaginary
parts (and every member of a batch) share one Gauss-Kronrod subdivision tree.
"""
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import quad_vec

from src.core.errors import DomainError, QuadratureFailure, TailNotDecaying

ComplexIntegrand = Callable[[float], complex]
BatchIntegrand = Callable[[float], Sequence[complex]]

# Doublings of the truncation point before the tail search gives up
MAX_TAIL_DOUBLINGS = 24


class QuadratureSpec(BaseModel):
    """Tolerance contract for every integral in the package"""
    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(1e-12, gt=0, lt=1)
    rel_tol: float = Field(1e-10, gt=0, lt=1)
    max_subdivisions: int = Field(10_000, ge=1, le=1_000_000)
    tail_bound_tol: float = Field(1e-14, gt=0)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int
    converged: bool


@dataclass(frozen=True)
class BatchQuadratureResult:
    values: np.ndarray  # complex, one entry per integrand
    error_estimate: float
    evaluations: int
    converged: bool

    def item(self, k: int) -> QuadratureResult:
        return QuadratureResult(complex(self.values[k]), self.error_estimate, self.evaluations, self.converged)


def integrate_finite_batch(
    f: BatchIntegrand,
    a: float,
    b: float,
    spec: QuadratureSpec,
    raise_on_failure: bool = True,
) -> BatchQuadratureResult:
    """
    Integrate k complex integrands at once over [a, b].

    f(x) returns k complex values. The error estimate is the max-norm over all
    real and imaginary components, so differences between members inherit the
    same subdivision and their quadrature noise largely cancels.
    """
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise DomainError(f"integration bounds must satisfy a < b, got [{a}, {b}]")

    def stacked(x: float) -> np.ndarray:
        z = np.atleast_1d(np.asarray(f(x), dtype=complex))
        return np.concatenate([z.real, z.imag])

    k = np.atleast_1d(np.asarray(f(a), dtype=complex)).size

    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        res, err, info = quad_vec(
            stacked, a, b,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            norm="max",
            limit=spec.max_subdivisions,
            quadrature="gk15",
            full_output=True,
        )

    values = np.asarray(res[:k]) + 1j * np.asarray(res[k:])
    err = float(err)
    finite = bool(np.all(np.isfinite(values))) and np.isfinite(err)
    converged = bool(info.success) and finite and err <= max(spec.abs_tol, spec.rel_tol * float(np.max(np.abs(res))))

    if not converged and raise_on_failure:
        best = complex(values[0]) if values.size else complex("nan")
        reason = "non-finite integrand or result" if not finite else f"status {info.status}: {info.message}"
        raise QuadratureFailure(
            f"integral over [{a:g}, {b:g}] not converged ({reason}); error estimate {err:.3g}",
            best_estimate=best,
            error_estimate=err,
        )

    return BatchQuadratureResult(values=values, error_estimate=err, evaluations=int(info.neval), converged=converged)


def integrate_finite(
    f: ComplexIntegrand,
    a: float,
    b: float,
    spec: QuadratureSpec,
    raise_on_failure: bool = True,
) -> QuadratureResult:
    batch = integrate_finite_batch(lambda x: (f(x),), a, b, spec, raise_on_failure=raise_on_failure)
    return batch.item(0)


def _find_truncation(f: ComplexIntegrand, a: float, spec: QuadratureSpec) -> float:
    upper = a + 1.0
    for _ in range(MAX_TAIL_DOUBLINGS):
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            fu = complex(f(upper))
        if np.isfinite(fu.real) and np.isfinite(fu.imag) and abs(fu) <= spec.tail_bound_tol:
            return upper
        upper = a + 2.0 * (upper - a)
    raise TailNotDecaying(
        f"integrand still above {spec.tail_bound_tol:g} at u = {upper:g} after {MAX_TAIL_DOUBLINGS} doublings"
    )


def integrate_semi_infinite(f: ComplexIntegrand, a: float, spec: QuadratureSpec) -> QuadratureResult:
    """
    Integrate f over [a, inf) for integrands with an exponentially decaying tail.

    The truncation point U is doubled (about a) until |f(U)| <= tail_bound_tol; the
    cut is then confirmed by integrating [U, 2U - a]. A tail contribution above
    max(tail_bound_tol, rel_tol * |I|) extends the range; two in a row raise
    TailNotDecaying.
    """
    upper = _find_truncation(f, a, spec)
    main = integrate_finite(f, a, upper, spec)
    value, error, evaluations = main.value, main.error_estimate, main.evaluations

    strikes = 0
    while True:
        nxt = a + 2.0 * (upper - a)
        tail = integrate_finite(f, upper, nxt, spec)
        value += tail.value
        error += tail.error_estimate
        evaluations += tail.evaluations
        if abs(tail.value) <= max(spec.tail_bound_tol, spec.rel_tol * abs(value)):
            break
        strikes += 1
        if strikes >= 2:
            raise TailNotDecaying(
                f"doubling the cut at u = {upper:g} changed the integral by {abs(tail.value):.3g} twice in a row",
                best_estimate=value,
                error_estimate=error,
            )
        upper = nxt

    return QuadratureResult(value=value, error_estimate=error, evaluations=evaluations, converged=True)
