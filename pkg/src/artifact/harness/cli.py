"""Command-line entry point."""

from __future__ import annotations

import argparse
import sys

from . import experiments as ex
from .checks import SUITES
from .config import ConfigError, ExperimentConfig, load_config
from .verify import UnknownSuiteError, run_verify


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _config(path):
    return load_config(path) if path else ExperimentConfig()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artifact", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity and convergence suites")
    v.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)}; repeatable")
    v.add_argument("--report", help="write check,value,tol,pass lines here")

    s = sub.add_parser("sweep-c", help="relativistic vs classical error over a list of light speeds")
    s.add_argument("--config")
    s.add_argument("--c-list", type=_floats)
    s.add_argument("--out")

    so = sub.add_parser("solve", help="run one fluid solver and record totals")
    so.add_argument("model", choices=["ep", "rem"])
    so.add_argument("--config")
    so.add_argument("--out")

    cdp = sub.add_parser("curl-div", help="spectral curl-div solve on the torus")
    cdp.add_argument("--config")
    cdp.add_argument("--out")

    ct = sub.add_parser("collision-table", help="collision frequency against |p|")
    ct.add_argument("--c-list", type=_floats, default=(100.0,))
    ct.add_argument("--radii", type=_floats, default=(0.0, 1.0, 10.0, 100.0, 1000.0))
    ct.add_argument("--out")

    d = sub.add_parser("dispersion", help="plasma-oscillation frequencies of the Euler-Poisson solvers")
    d.add_argument("--modes", type=_floats, default=(1, 2, 3, 4))
    d.add_argument("--N", type=int, default=512)
    d.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            report = run_verify(args.suite)
            print(report.table())
            if args.report:
                report.write(args.report)
            return 0 if report.passed else 1
        if args.command == "sweep-c":
            cfg = _config(args.config)
            if args.c_list:
                cfg = ExperimentConfig(**{**cfg.__dict__, "physics_c_list": args.c_list})
            header, rows = ex.run_sweep(cfg)
            out = args.out or cfg.output_path
            sys.stdout.write(ex.emit(header, rows, out, gnuplot=True))
            return 0
        if args.command == "solve":
            cfg = _config(args.config)
            header, rows = ex.solve(cfg, args.model)
        elif args.command == "curl-div":
            header, rows = ex.curl_div_report(_config(args.config))
        elif args.command == "collision-table":
            header, rows = ex.collision_table(args.c_list, args.radii)
        else:
            header, rows = ex.dispersion_table(tuple(int(m) for m in args.modes), N=args.N)
        sys.stdout.write(ex.emit(header, rows, args.out, gnuplot=True))
        return 0
    except (ConfigError, UnknownSuiteError) as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
