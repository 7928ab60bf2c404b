"""
Evaluator registry
Maps labels such as "D/quadrature" or "S11/closed_rederived/standard_hankel" to
functions of (t, r), and evaluates grids of them for scans and comparisons.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from src.core.errors import (
    DomainError,
    EvanescentError,
    LightconeSingular,
    LightlikeUnparametrizable,
)
from src.core.schemas import ScanRecord
from src.core.workers import map_ordered
from src.numerics.quadrature import QuadratureSpec
from src.numerics.special_functions import KernelBasis
from src.physics.correlator import ClosedVariant, s11_closed, s11_finite_difference, s11_quadrature
from src.physics.geometry import Regime, Waveguide, classify_interval, lowest_cutoff, rest_frame
from src.physics.propagator import d_closed, d_evanescent_quadrature


@dataclass(frozen=True)
class EvaluationContext:
    waveguide: Waveguide
    spec: QuadratureSpec = field(default_factory=QuadratureSpec)
    eps_light: float = 0.0


Evaluator = Callable[[EvaluationContext, float, float], complex]


def _d_quadrature(ctx: EvaluationContext, t: float, r: float) -> complex:
    return d_evanescent_quadrature(ctx.waveguide, t, r, ctx.spec).value


def _d_quadrature_rest_frame(ctx: EvaluationContext, t: float, r: float) -> complex:
    return _d_quadrature(ctx, *rest_frame(t, r))


def _d_closed(basis: KernelBasis) -> Evaluator:
    def evaluate(ctx: EvaluationContext, t: float, r: float) -> complex:
        return d_closed(ctx.waveguide, t, r, basis, ctx.spec, ctx.eps_light).value
    return evaluate


def _s11_quadrature(ctx: EvaluationContext, t: float, r: float) -> complex:
    return s11_quadrature(ctx.waveguide, t, r, ctx.spec).value


def _s11_quadrature_rest_frame(ctx: EvaluationContext, t: float, r: float) -> complex:
    return _s11_quadrature(ctx, *rest_frame(t, r))


def _s11_finite_difference(ctx: EvaluationContext, t: float, r: float) -> complex:
    return s11_finite_difference(ctx.waveguide, t, r, ctx.spec).value


def _s11_closed(variant: ClosedVariant, basis: KernelBasis) -> Evaluator:
    def evaluate(ctx: EvaluationContext, t: float, r: float) -> complex:
        if variant is ClosedVariant.REDERIVED:
            # frame-reduced form, evaluated in the rest (or simultaneity) frame
            if classify_interval(t, r, ctx.eps_light) is Regime.LIGHTLIKE:
                raise LightconeSingular(f"closed forms are not evaluated on the light cone (t={t}, r={r})")
            t, r = rest_frame(t, r)
        return s11_closed(ctx.waveguide, t, r, variant, basis, ctx.spec, ctx.eps_light).value
    return evaluate


def _build_registry() -> Dict[str, Evaluator]:
    registry: Dict[str, Evaluator] = {
        "D/quadrature": _d_quadrature,
        "D/quadrature_rest_frame": _d_quadrature_rest_frame,
        "S11/quadrature": _s11_quadrature,
        "S11/quadrature_rest_frame": _s11_quadrature_rest_frame,
        "S11/finite_difference": _s11_finite_difference,
    }
    for basis in KernelBasis:
        registry[f"D/closed/{basis.value}"] = _d_closed(basis)
        for variant in ClosedVariant:
            registry[f"S11/closed_{variant.value}/{basis.value}"] = _s11_closed(variant, basis)
    return registry


EVALUATORS: Dict[str, Evaluator] = _build_registry()


def evaluator_label(quantity: str, method: str, basis: KernelBasis = KernelBasis.STANDARD_HANKEL) -> str:
    """Registry label for a CLI (quantity, method, basis) triple."""
    basis = KernelBasis(basis)
    if method in ("quadrature", "quadrature_rest_frame", "finite_difference"):
        label = f"{quantity}/{method}"
    elif quantity == "D" and method == "closed":
        label = f"D/closed/{basis.value}"
    elif quantity == "S11" and method in ("closed", "closed_rederived", "closed_paper_printed"):
        variant = "closed_rederived" if method == "closed" else method
        label = f"S11/{variant}/{basis.value}"
    else:
        raise DomainError(f"method '{method}' is not available for quantity '{quantity}'")
    if label not in EVALUATORS:
        raise DomainError(f"method '{method}' is not available for quantity '{quantity}'")
    return label


def get_evaluator(label: str) -> Evaluator:
    try:
        return EVALUATORS[label]
    except KeyError:
        raise DomainError(f"unknown evaluator '{label}'; known: {', '.join(sorted(EVALUATORS))}") from None


def label_basis(label: str) -> str:
    """Basis part of a closed-form label, empty for the others."""
    parts = label.split("/")
    return parts[2] if len(parts) == 3 else ""


def label_method(label: str) -> str:
    return label.split("/")[1]


def grid_points(
    t_range: Tuple[float, float, int],
    r_range: Tuple[float, float, int],
) -> List[Tuple[float, float]]:
    """Row-major (t outer, r inner) points of a uniform grid."""
    def axis(lo: float, hi: float, n: int) -> List[float]:
        if n == 1:
            return [float(lo)]
        step = (hi - lo) / (n - 1)
        return [float(lo + k * step) for k in range(n - 1)] + [float(hi)]

    return [(t, r) for t in axis(*t_range) for r in axis(*r_range)]


def evaluate_point(ctx: EvaluationContext, label: str, t: float, r: float) -> ScanRecord:
    """One scan record; domain and numerical failures become marked rows."""
    evaluator = get_evaluator(label)
    omega_c = lowest_cutoff(ctx.waveguide)
    common = dict(
        t=t,
        r=r,
        regime=classify_interval(t, r, ctx.eps_light).value,
        method=label_method(label),
        basis=label_basis(label),
        omega_c_t=omega_c * t,
        omega_c_r=omega_c * r,
    )
    try:
        value = complex(evaluator(ctx, t, r))
    except (LightconeSingular, LightlikeUnparametrizable) as e:
        return ScanRecord(status="singular", message=str(e), **common)
    except EvanescentError as e:
        return ScanRecord(status="error", message=f"{type(e).__name__}: {e}", **common)
    return ScanRecord(re=value.real, im=value.imag, **common)


def run_scan(
    ctx: EvaluationContext,
    label: str,
    points: Sequence[Tuple[float, float]],
    workers: int = 1,
    quiet: bool = True,
) -> List[ScanRecord]:
    """Evaluate every point; output order follows the input whatever the worker count."""
    get_evaluator(label)
    return map_ordered(lambda p: evaluate_point(ctx, label, p[0], p[1]), points,
                       workers=workers, desc=f"scan {label}", quiet=quiet)


def evaluate_many(
    ctx: EvaluationContext,
    label: str,
    points: Iterable[Tuple[float, float]],
    workers: int = 1,
) -> List[complex]:
    """Raw values; the first failure propagates."""
    evaluator = get_evaluator(label)
    return map_ordered(lambda p: complex(evaluator(ctx, p[0], p[1])), points, workers=workers)

