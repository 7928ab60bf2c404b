"""
Asymptotic analysis
Log-linear decay fits, zero-crossing oscillation fits and cross-evaluator
discrepancy reports.
"""
import math
import statistics
from typing import List, Sequence, Tuple

import numpy as np

from src.analysis.evaluators import EvaluationContext, get_evaluator
from src.core.errors import (
    DomainError,
    EvaluationError,
    EvanescentError,
    InsufficientData,
    NoOscillationDetected,
    NonPositiveModulus,
)
from src.core.schemas import DecayFit, DiscrepancyReport, ModelAgreement, OscillationFit, PointDiscrepancy
from src.core.workers import map_ordered
from src.physics.correlator import s11_asymptotic_model
from src.physics.geometry import Regime, Waveguide

MIN_DECAY_SAMPLES = 4
MIN_OSCILLATION_SAMPLES = 16
MIN_ZERO_CROSSINGS = 4
REL_DIFF_FLOOR = 1e-300


def _coordinates(samples: Sequence[Tuple[float, object]], minimum: int) -> np.ndarray:
    if len(samples) < minimum:
        raise InsufficientData(f"need at least {minimum} samples, got {len(samples)}")
    xs = np.array([float(s[0]) for s in samples])
    if not np.all(np.isfinite(xs)) or np.any(xs <= 0):
        raise DomainError("sample coordinates must be finite and positive")
    if np.any(np.diff(xs) <= 0):
        raise DomainError("sample coordinates must be strictly increasing")
    return xs


def _log_moduli(values: np.ndarray) -> np.ndarray:
    moduli = np.abs(values)
    if not np.all(np.isfinite(moduli)) or np.any(moduli <= 0):
        raise NonPositiveModulus("every sample needs a finite, strictly positive modulus")
    return np.log(moduli)


def fit_spacelike_decay(samples: Sequence[Tuple[float, float]]) -> DecayFit:
    """
    Least squares of ln|value| on {1, r, ln r}: amplitude * r^exponent * exp(-rate r).
    """
    rs = _coordinates(samples, MIN_DECAY_SAMPLES)
    y = _log_moduli(np.array([s[1] for s in samples], dtype=complex))

    design = np.column_stack([np.ones_like(rs), rs, np.log(rs)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)

    residual = y - design @ coef
    ss_res = float(residual @ residual)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else min(max(1.0 - ss_res / ss_tot, 0.0), 1.0)

    return DecayFit(
        amplitude=float(np.exp(coef[0])),
        rate=float(-coef[1]),
        exponent=float(coef[2]),
        r_squared=r_squared,
        window=(float(rs[0]), float(rs[-1])),
        n_points=len(rs),
    )


def zero_crossings(ts: np.ndarray, values: np.ndarray) -> List[float]:
    """
    Strict sign changes of values, located by linear interpolation between the
    nonzero samples on either side. Exact zeros only count when the sign flips
    across them, so a signal that touches zero and turns back has no crossing.
    """
    crossings = []
    last = None
    for k in range(len(ts)):
        b = values[k]
        if b == 0:
            continue
        if last is not None:
            a = values[last]
            if (a < 0) != (b < 0):
                crossings.append(float(ts[last] + (ts[k] - ts[last]) * a / (a - b)))
        last = k
    return crossings


def fit_timelike_oscillation(samples: Sequence[Tuple[float, complex]]) -> OscillationFit:
    """
    Frequency from the mean spacing of real-part zero crossings; envelope exponent
    from ln|value| against ln t after removing the carrier exp(-i w t).
    """
    ts = _coordinates(samples, MIN_OSCILLATION_SAMPLES)
    values = np.array([s[1] for s in samples], dtype=complex)

    crossings = zero_crossings(ts, values.real)
    if len(crossings) < MIN_ZERO_CROSSINGS:
        raise NoOscillationDetected(
            f"{len(crossings)} zero crossings in [{ts[0]:g}, {ts[-1]:g}]; widen the window or sample more densely"
        )
    frequency = math.pi * (len(crossings) - 1) / (crossings[-1] - crossings[0])

    envelope = _log_moduli(values * np.exp(1j * frequency * ts))
    slope, _ = np.polyfit(np.log(ts), envelope, 1)

    return OscillationFit(
        frequency=float(frequency),
        envelope_exponent=float(slope),
        n_zero_crossings=len(crossings),
        window=(float(ts[0]), float(ts[-1])),
        n_points=len(ts),
    )


def compare_to_model(wg: Waveguide, regime: Regime, samples: Sequence[Tuple[float, complex]]) -> ModelAgreement:
    """
    Ratio of |S11| to the leading large-separation shape s11_asymptotic_model.
    A flat ratio (small spread) means the window is deep in the asymptotic regime.
    """
    coords = _coordinates(samples, 1)
    model = np.array([abs(s11_asymptotic_model(wg, regime, c)) for c in coords])
    ratios = np.abs(np.array([s[1] for s in samples], dtype=complex)) / model
    if not np.all(np.isfinite(ratios)) or np.any(ratios <= 0):
        raise NonPositiveModulus("every sample needs a finite, strictly positive modulus")
    amplitude = statistics.median_low(ratios.tolist())
    return ModelAgreement(amplitude=amplitude, spread=float((ratios.max() - ratios.min()) / amplitude))


def relative_difference(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b), REL_DIFF_FLOOR)


def build_discrepancy_report(
    method_a: str,
    method_b: str,
    grid: Sequence[Tuple[float, float]],
    values_a: Sequence[complex],
    values_b: Sequence[complex],
    description: str = "",
) -> DiscrepancyReport:
    points = [
        PointDiscrepancy(
            t=t, r=r,
            a_re=a.real, a_im=a.imag,
            b_re=b.real, b_im=b.imag,
            rel_diff=relative_difference(a, b),
        )
        for (t, r), a, b in zip(grid, values_a, values_b)
    ]
    diffs = [p.rel_diff for p in points]
    return DiscrepancyReport(
        method_a=method_a,
        method_b=method_b,
        grid=description or f"{len(points)} points",
        points=points,
        max_rel_diff=max(diffs),
        median_rel_diff=statistics.median_low(diffs),
    )


def compare_methods(
    grid: Sequence[Tuple[float, float]],
    method_a: str,
    method_b: str,
    ctx: EvaluationContext,
    description: str = "",
    workers: int = 1,
) -> DiscrepancyReport:
    """
    Evaluate two registered evaluators on the same grid and report per-point
    |a - b| / max(|a|, |b|). Failures carry the offending point.
    """
    grid = [(float(t), float(r)) for t, r in grid]
    if not grid:
        raise InsufficientData("comparison grid is empty")

    evaluate_a, evaluate_b = get_evaluator(method_a), get_evaluator(method_b)

    def both(point: Tuple[float, float]) -> Tuple[complex, complex]:
        t, r = point
        try:
            a = complex(evaluate_a(ctx, t, r))
            b = a if method_b == method_a else complex(evaluate_b(ctx, t, r))
        except EvanescentError as e:
            raise EvaluationError(t, r, e) from e
        return a, b

    pairs = map_ordered(both, grid, workers=workers)
    return build_discrepancy_report(
        method_a, method_b, grid,
        [p[0] for p in pairs], [p[1] for p in pairs],
        description,
    )
