"""Command-line front end.

Exit codes: 0 success, 2 validation or regime error, 3 numerical
convergence failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import sys

import numpy as np

from .classical import ClassicalSpec, traversal_exact, traversal_quadratic
from .config import SweepSpec, load_config
from .dwelltime import consistency_report, dwell_time_closed
from .errors import BracketError, ConfigError, ConvergenceError, DomainError, UsageError
from .langevin import PhysicalConfig
from .sweep import csv_text, emit_csv, emit_plot, format_number, run_sweep
from .wavepacket import current_canonical, current_paper, density

log = logging.getLogger("hartman_dwell")

EXIT_OK, EXIT_INVALID, EXIT_CONVERGENCE, EXIT_IO = 0, 2, 3, 4


def _load(args) -> tuple[PhysicalConfig, SweepSpec]:
    if args.config:
        cfg, spec = load_config(args.config)
    else:
        cfg, spec = PhysicalConfig(), SweepSpec()
    if args.eta is not None:
        cfg = dataclasses.replace(cfg, eta=args.eta)
    overrides = {}
    for flag, key in (("u_min", "u_min"), ("u_max", "u_max"), ("steps", "steps")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key] = value
    if args.convention is not None:
        overrides["convention"] = args.convention
    if getattr(args, "numeric", False):
        overrides["include_numeric"] = True
    if getattr(args, "classical", False):
        overrides["include_classical"] = True
    if overrides:
        spec = dataclasses.replace(spec, **overrides)
    return cfg, spec


def _write_text(text: str, path) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_dwell(args) -> None:
    cfg, spec = _load(args)
    if args.zeta is not None:
        cfg = cfg.with_zeta(args.zeta)
    result = dwell_time_closed(cfg, spec.convention, numeric=spec.include_numeric)
    _write_text(_json(result.as_dict()), args.out)


def cmd_sweep(args) -> None:
    cfg, spec = _load(args)
    rows = run_sweep(cfg, spec)
    log.info("sweep: %d rows over u in [%g, %g]", len(rows), spec.u_min, spec.u_max)
    if args.out:
        emit_csv(rows, args.out)
    else:
        sys.stdout.write(csv_text(rows))
    if args.plot:
        emit_plot(rows, args.plot, "dwell_vs_width")
    if args.classical_plot:
        emit_plot(rows, args.classical_plot, "classical_vs_width")


def cmd_evolve(args) -> None:
    cfg, _ = _load(args)
    q_min = 0.0 if args.q_min is None else args.q_min
    q_max = 2.0 * cfg.z0 if args.q_max is None else args.q_max
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "q", "density", "current_canonical", "current_paper"])
    for t in np.linspace(0.0, args.t_max, args.nt):
        for q in np.linspace(q_min, q_max, args.nq):
            writer.writerow(
                [
                    format_number(t),
                    format_number(q),
                    format_number(density(cfg, q, t)),
                    format_number(current_canonical(cfg, q, t)),
                    format_number(current_paper(cfg, q, t)),
                ]
            )
    _write_text(buf.getvalue(), args.out)


def cmd_classical(args) -> None:
    _, spec = _load(args)
    w_max = args.w_max if args.w_max is not None else 0.95 * spec.v0 / max(spec.gamma, 1e-300)
    rows = []
    for w in np.linspace(args.w_min, min(w_max, 1e12), args.steps or 50):
        cl = ClassicalSpec(spec.gamma, spec.v0, float(w))
        rows.append(
            {
                "w_cl": float(w),
                "tau_classical_exact": traversal_exact(cl),
                "tau_classical_quadratic": traversal_quadratic(cl),
            }
        )
    buf = io.StringIO()
    buf.write("w_cl,tau_classical_exact,tau_classical_quadratic\n")
    for r in rows:
        buf.write(",".join(format_number(r[k]) for k in r) + "\n")
    _write_text(buf.getvalue(), args.out)
    if args.plot:
        emit_plot(rows, args.plot, "classical_vs_width")


def cmd_report(args) -> None:
    cfg, _ = _load(args)
    etas = [cfg.eta] if args.eta is not None else [0.0, 0.5, 1.0]
    configs = [
        dataclasses.replace(cfg, eta=eta).with_zeta(zeta)
        for eta in etas
        for zeta in args.zetas
    ]
    report = consistency_report(configs, numeric=True, propagator=args.propagator)
    _write_text(_json(report), args.out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file")
    common.add_argument("--convention", choices=["paper", "rederived"], default=None)
    common.add_argument("--eta", type=float, default=None, help="override damping constant")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="hartman-dwell",
        description="Dwell time of a Gaussian packet crossing a dissipative inverted parabolic barrier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dwell", parents=[common], help="single-point dwell time as JSON")
    p.add_argument("--zeta", type=float, default=None, help="set z0 from zeta = z0/(sqrt(2) sigma)")
    p.add_argument("--numeric", action="store_true", help="also run the time-integral route")
    p.set_defaults(func=cmd_dwell)

    p = sub.add_parser("sweep", parents=[common], help="sweep over scaled width u = w/sigma")
    p.add_argument("--u-min", dest="u_min", type=float, default=None)
    p.add_argument("--u-max", dest="u_max", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--numeric", action="store_true", help="add the time-integral column")
    p.add_argument("--classical", action="store_true", help="add classical comparator columns")
    p.add_argument("--plot", metavar="PATH", help="SVG of dwell time against u")
    p.add_argument("--classical-plot", metavar="PATH", help="SVG of classical traversal time")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("evolve", parents=[common], help="density and currents on a (q, t) grid")
    p.add_argument("--t-max", dest="t_max", type=float, default=2.0)
    p.add_argument("--nt", type=int, default=5)
    p.add_argument("--q-min", dest="q_min", type=float, default=None)
    p.add_argument("--q-max", dest="q_max", type=float, default=None)
    p.add_argument("--nq", type=int, default=21)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("classical", parents=[common], help="classical traversal-time curve")
    p.add_argument("--w-min", dest="w_min", type=float, default=0.1)
    p.add_argument("--w-max", dest="w_max", type=float, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--plot", metavar="PATH")
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("report", parents=[common], help="consistency report as JSON")
    p.add_argument("--zetas", type=float, nargs="+", default=[1.0, 1.5, 2.0, 3.0, 5.0])
    p.add_argument("--propagator", action="store_true", help="include propagated-width check")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        args.func(args)
    except ConvergenceError as exc:
        print(f"error: numerical convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ConfigError, DomainError, BracketError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
