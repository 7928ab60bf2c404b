"""
Command-line surface
Subcommands: cutoff, scan, fit, verify. Data goes to stdout (or --out),
progress and diagnostics to stderr.

Exit codes: 0 success, 1 check / evaluation / fit failure, 2 usage or configuration error.
"""
import argparse
import sys
from typing import Any, Dict, List, Optional

import numpy as np

from src.analysis.asymptotics import compare_to_model, fit_spacelike_decay, fit_timelike_oscillation
from src.analysis.evaluators import (
    EvaluationContext,
    evaluate_many,
    evaluator_label,
    grid_points,
    label_basis,
    run_scan,
)
from src.core.config import METHODS, QUANTITIES, RunConfig, load_run_config
from src.core.errors import ConfigError, DomainError, EvanescentError
from src.core.report import render_cutoff_csv, render_json, render_scan_csv, render_scan_json, write_output
from src.core.schemas import CutoffRow, FitReport, VerificationReport
from src.core.workers import WORKERS_ENV
from src.numerics.special_functions import KernelBasis
from src.physics.geometry import ModeIndex, Waveguide, cutoff_frequency, lowest_cutoff

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

UNITS = "hbar = c = 1"
FIT_EVALUATOR = ("S11", "closed_rederived")


class UsageError(Exception):
    """Flags that parse but do not combine, e.g. a method the quantity lacks"""


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose errors are one `ERROR usage:` line and exit code 2"""

    def error(self, message: str):
        print(f"ERROR usage: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _default(name: str) -> Any:
    field = RunConfig.model_fields[name]
    value = field.default
    return value.value if isinstance(value, KernelBasis) else value


# ==================== Parser ====================

def build_parser() -> CliParser:
    common = CliParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value config file ('#' comments)")
    common.add_argument("--b1", type=float, help=f"short cross-section side (default {_default('b1')})")
    common.add_argument("--b2", type=float, help=f"long cross-section side, w_c = pi/b2 (default {_default('b2')})")
    common.add_argument("--abs-tol", type=float, dest="abs_tol", help=f"quadrature absolute tolerance (default {_default('abs_tol')})")
    common.add_argument("--rel-tol", type=float, dest="rel_tol", help=f"quadrature relative tolerance (default {_default('rel_tol')})")
    common.add_argument("--format", choices=("csv", "json"), dest="output_format", help="output format (default csv)")
    common.add_argument("--precision", type=int, help=f"significant digits, 6..17 (default {_default('precision')})")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--workers", type=int, help=f"grid evaluation threads (default ${WORKERS_ENV} or 1)")
    common.add_argument("--quiet", action="store_true", help="no progress on stderr")

    evaluation = CliParser(add_help=False)
    evaluation.add_argument("--quantity", choices=QUANTITIES, help="D or S11")
    evaluation.add_argument("--method", choices=METHODS, help="evaluator (default quadrature)")
    evaluation.add_argument("--basis", choices=[b.value for b in KernelBasis],
                            help="closed-form kernel (default standard_hankel)")

    parser = CliParser(
        prog="evanescent",
        description="Photon correlators in an undersized rectangular waveguide",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    cutoff = sub.add_parser("cutoff", parents=[common], help="table of mode cutoff frequencies")
    cutoff.add_argument("--max-r", type=int, dest="max_r", help=f"largest r index (default {_default('max_r')})")
    cutoff.add_argument("--max-s", type=int, dest="max_s", help=f"largest s index (default {_default('max_s')})")

    scan = sub.add_parser("scan", parents=[common, evaluation], help="evaluate D or S11 over a (t, r) grid")
    scan.add_argument("--grid", metavar="t0:t1:n,r0:r1:m", help="grid ranges and step counts (default 0:10:11,0:10:11)")

    fit = sub.add_parser("fit", parents=[common, evaluation], help="fit the spacelike or timelike decay law")
    fit.add_argument("--regime", choices=("spacelike", "timelike"), required=True)
    fit.add_argument("--window", metavar="MIN,MAX", help="window in units of 1/w_c (default 5,30 or 10,60)")
    fit.add_argument("--points", type=int, help="samples in the window (default 251 or 501)")

    verify = sub.add_parser("verify", parents=[common], help="run the acceptance checks, emit a JSON report")
    verify.add_argument("--grid", metavar="t0:t1:n,r0:r1:m", help="grid for the determinism check")

    return parser


def parse_grid(spec: str) -> Dict[str, Any]:
    """'t0:t1:n,r0:r1:m' -> RunConfig grid fields"""
    try:
        t_part, r_part = spec.split(",")
        t0, t1, n = t_part.split(":")
        r0, r1, m = r_part.split(":")
        return {
            "t_min": float(t0), "t_max": float(t1), "t_steps": int(n),
            "r_min": float(r0), "r_max": float(r1), "r_steps": int(m),
        }
    except ValueError:
        raise ConfigError(f"expected t0:t1:n,r0:r1:m, got {spec!r}", field="grid") from None


def config_from_args(args: argparse.Namespace) -> RunConfig:
    keys = ("b1", "b2", "abs_tol", "rel_tol", "output_format", "precision", "workers",
            "quantity", "method", "basis", "max_r", "max_s")
    overrides: Dict[str, Any] = {k: getattr(args, k, None) for k in keys}
    if getattr(args, "grid", None):
        overrides.update(parse_grid(args.grid))
    if args.command == "fit":
        prefix = "fit" if args.regime == "spacelike" else "oscillation"
        overrides[f"{prefix}_window"] = args.window
        overrides[f"{prefix}_points"] = args.points
    return load_run_config(args.config, overrides)


def _resolve_label(quantity: str, method: str, basis: KernelBasis) -> str:
    try:
        return evaluator_label(quantity, method, basis)
    except DomainError as e:
        raise UsageError(str(e)) from e


def _context(cfg: RunConfig) -> EvaluationContext:
    wg = Waveguide(b1=cfg.b1, b2=cfg.b2)
    return EvaluationContext(waveguide=wg, spec=cfg.quadrature_spec(), eps_light=cfg.eps_light)


# ==================== Commands ====================

def cmd_cutoff(cfg: RunConfig, args: argparse.Namespace) -> int:
    wg = Waveguide(b1=cfg.b1, b2=cfg.b2)
    modes = [ModeIndex(r=r, s=s) for r in range(cfg.max_r + 1) for s in range(1, cfg.max_s + 1)]
    rows = sorted(
        (CutoffRow(r=m.r, s=m.s, omega=cutoff_frequency(wg, m), is_lowest=(m.r, m.s) == (0, 1)) for m in modes),
        key=lambda row: (row.omega, row.r, row.s),
    )
    if cfg.output_format == "json":
        text = render_json({
            "metadata": {"units": UNITS, "b1": cfg.b1, "b2": cfg.b2, "omega_c": lowest_cutoff(wg)},
            "modes": [row.model_dump() for row in rows],
        }, cfg.precision)
    else:
        text = render_cutoff_csv(rows, cfg.precision)
    write_output(text, args.out)
    return EXIT_OK


def cmd_scan(cfg: RunConfig, args: argparse.Namespace) -> int:
    label = _resolve_label(cfg.quantity, cfg.method, cfg.basis)
    ctx = _context(cfg)
    points = grid_points((cfg.t_min, cfg.t_max, cfg.t_steps), (cfg.r_min, cfg.r_max, cfg.r_steps))
    records = run_scan(ctx, label, points, workers=cfg.workers, quiet=args.quiet)

    if cfg.output_format == "json":
        metadata = {
            "units": UNITS,
            "b1": cfg.b1,
            "b2": cfg.b2,
            "omega_c": lowest_cutoff(ctx.waveguide),
            "quantity": cfg.quantity,
            "evaluator": label,
            "grid": {
                "t": [cfg.t_min, cfg.t_max, cfg.t_steps],
                "r": [cfg.r_min, cfg.r_max, cfg.r_steps],
            },
        }
        text = render_scan_json(records, metadata, cfg.precision)
    else:
        text = render_scan_csv(records, cfg.precision)
    write_output(text, args.out)

    failed = [rec for rec in records if rec.status == "error"]
    if failed:
        first = failed[0]
        print(f"ERROR EvaluationError: {len(failed)} grid point(s) failed, first at t={first.t:g}, r={first.r:g}: "
              f"{first.message}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def cmd_fit(cfg: RunConfig, args: argparse.Namespace) -> int:
    quantity, method = FIT_EVALUATOR
    if "quantity" in cfg.model_fields_set or "method" in cfg.model_fields_set:
        quantity, method = cfg.quantity, cfg.method
    label = _resolve_label(quantity, method, cfg.basis)
    ctx = _context(cfg)
    omega_c = lowest_cutoff(ctx.waveguide)

    timelike = args.regime == "timelike"
    window = cfg.oscillation_window if timelike else cfg.fit_window
    n = cfg.oscillation_points if timelike else cfg.fit_points
    coords = np.unique(np.linspace(window[0], window[1], n)) / omega_c
    grid = [(c, 0.0) if timelike else (0.0, c) for c in coords.tolist()]

    values = evaluate_many(ctx, label, grid, workers=cfg.workers)
    samples = list(zip(coords.tolist(), values))
    fit = fit_timelike_oscillation(samples) if timelike else fit_spacelike_decay(samples)
    model = compare_to_model(ctx.waveguide, args.regime, samples) if quantity == "S11" else None

    report = FitReport(
        regime=args.regime,
        evaluator=label,
        basis=label_basis(label) or None,
        window=window,
        n_points=len(samples),
        b1=cfg.b1,
        b2=cfg.b2,
        omega_c=omega_c,
        fit=fit,
        model=model,
    )
    write_output(render_json(report, cfg.precision), args.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> int:
    from src.analysis.verify import run_battery

    report = run_battery(cfg, quiet=args.quiet)
    text = render_json(report, cfg.precision)
    VerificationReport.model_validate_json(text)
    write_output(text, args.out)
    if not args.quiet:
        glyph = "✅" if report.passed else "❌"
        print(f"{glyph} {report.n_passed} passed, {report.n_failed} failed, {report.n_measured} measured",
              file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILURE


COMMANDS = {
    "cutoff": cmd_cutoff,
    "scan": cmd_scan,
    "fit": cmd_fit,
    "verify": cmd_verify,
}


def _fail(kind: str, message: str, code: int) -> int:
    print(f"ERROR {kind}: {' '.join(str(message).split())}", file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as e:
        return _fail("ConfigError", str(e), EXIT_USAGE)
    except UsageError as e:
        return _fail("usage", str(e), EXIT_USAGE)
    except EvanescentError as e:
        return _fail(type(e).__name__, str(e), EXIT_FAILURE)
    except OSError as e:
        return _fail("OSError", str(e), EXIT_FAILURE)
