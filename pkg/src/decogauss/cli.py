"""Command-line front end.

Exit codes: 0 success, 1 failed validation or oracle check, 2 bad
configuration or arguments.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace

from .asymptotics import estimate_lambda
from .bath import FULLERENE
from .errors import ConfigError, DecoGaussError, DomainError, InvalidStateError
from .evolution import EvolutionPoint, density_coeffs
from .figures import FIGURE_IDS, write_figure, write_table1
from .oracle import worst, write_reports_csv
from .sweep import fmt, load_config, run_sweep
from .verify import run_verify

EXIT_OK, EXIT_INVALID, EXIT_CONFIG = 0, 1, 2
DEFAULT_EPSILON = 0.069


def _particle(args):
    over = {k: getattr(args, k) for k in ("m", "sigma0", "ell0") if getattr(args, k, None) is not None}
    gamma = getattr(args, "gamma", None)
    if gamma is not None:
        over["gamma"] = gamma
    return replace(FULLERENE, **over)


def _add_particle_args(sp):
    sp.add_argument("--m", type=float, help="mass in kg (default: fullerene)")
    sp.add_argument("--sigma0", type=float, help="initial width in m")
    sp.add_argument("--ell0", type=float, help="source coherence length in m, 'inf' for a pure source")


def cmd_sweep(args):
    cfg = load_config(args.config)
    path = run_sweep(cfg, out=args.out)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_figure(args):
    ids = FIGURE_IDS if args.id == "all" else [args.id]
    for fig_id in ids:
        print(f"wrote {write_figure(fig_id, args.out)}")
    return EXIT_OK


def cmd_table1(args):
    print(f"wrote {write_table1(args.out)}")
    return EXIT_OK


def cmd_verify(args):
    reports = run_verify(args.level, n=args.n)
    write_reports_csv(args.out, reports)
    failed = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed; report in {args.out}")
    w = worst(reports)
    if w is not None:
        print(f"worst: {w.quantity} (gamma={w.gamma:g}, lambda={w.lam:g}, t={w.t:g}) rel_err={w.rel_err:.3e} tol={w.tol:.1e}")
    return EXIT_INVALID if failed else EXIT_OK


def cmd_infer(args):
    p = _particle(args)
    eps = DEFAULT_EPSILON if args.epsilon is None else args.epsilon
    raw = estimate_lambda(args.mu, args.coherence, p, args.t)
    corrected = estimate_lambda(args.mu, args.coherence, p, args.t, epsilon=eps)
    print(f"lambda_raw       = {fmt(raw)}")
    print(f"lambda_corrected = {fmt(corrected)}")
    print(f"epsilon          = {eps}")
    # corrected / raw
    print(f"bias_factor      = {fmt(math.exp(2 * eps * args.coherence / (1 + eps)))}")
    return EXIT_OK


def cmd_coeffs(args):
    p = _particle(args)
    d = density_coeffs(p, EvolutionPoint(args.t, args.lam))
    for name, unit in [("A1", "m^-2"), ("A2", "m^-2"), ("A3", "m^-2"), ("Bsq", "m^-4"),
                       ("C1", "(kg m/s)^-2"), ("C2", "(kg m/s)^-2"), ("C3", "(kg m/s)^-2")]:
        print(f"{name:<4}= {fmt(getattr(d, name))}  [{unit}]")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser():
    ap = _Parser(prog="decogauss", description="Decoherence of correlated Gaussian states.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("sweep", help="evaluate a (gamma, Lambda, t) grid from a config file")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", help="CSV path (overrides sweep.out)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("figure", help="write the data behind one figure panel")
    sp.add_argument("--id", required=True, choices=[*FIGURE_IDS, "all"])
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_figure)

    sp = sub.add_parser("table1", help="reference vs computed purity/coherence table")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("verify", help="compare closed forms with the numerical oracles")
    sp.add_argument("--level", choices=["quick", "full"], default="quick")
    sp.add_argument("--out", required=True)
    sp.add_argument("--n", type=int, help="grid points per axis for every oracle")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("infer", help="estimate Lambda from purity and coherence")
    sp.add_argument("--mu", type=float, required=True)
    sp.add_argument("--coherence", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--epsilon", type=float, help=f"exponent correction (default {DEFAULT_EPSILON})")
    _add_particle_args(sp)
    sp.set_defaults(func=cmd_infer)

    sp = sub.add_parser("coeffs", help="print the density-matrix coefficients")
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--lambda", dest="lam", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    _add_particle_args(sp)
    sp.set_defaults(func=cmd_coeffs)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvalidStateError, DecoGaussError) as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
