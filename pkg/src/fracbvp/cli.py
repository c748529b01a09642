"""Command-line entry point.

Subcommands::

    fracbvp run    --case 1 --method both --n 100 [--m 10] [...]
    fracbvp table1 [--out DIR]
    fracbvp sweep  --case 3 --n-list 40,80,200 [...]

Exit code 0 covers every completed scientific run, including a solver that
diverges (that outcome lands in the ``status`` column); nonzero codes are
reserved for usage and I/O faults.  Flags override values from an optional
``key=value`` config file; the environment is never consulted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import RunConfig, run, sweep, table1

_CONFIG_KEYS = {"case", "method", "n", "m", "alpha_spacing", "scheme",
                "repeats", "out", "n_list"}


def _load_config_file(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SystemExit(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise SystemExit(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Config file fills options the command line left unset."""
    if not getattr(args, "config", None):
        return args
    loaded = _load_config_file(args.config)
    casts = {"n": int, "m": int, "repeats": int}
    for key, value in loaded.items():
        if getattr(args, key, None) is None:
            setattr(args, key, casts.get(key, str)(value))
    return args


def _add_common(p: argparse.ArgumentParser, with_case: bool = True) -> None:
    if with_case:
        p.add_argument("--case", choices=["1", "2", "3", "4"], default=None,
                       help="benchmark case to run")
    p.add_argument("--method", choices=["fdm", "ifoi", "both"], default=None)
    p.add_argument("--n", type=int, default=None,
                   help="grid intervals on [0,1] (default: per-case)")
    p.add_argument("--m", type=int, default=None,
                   help="number of fractional integration stages")
    p.add_argument("--alpha-spacing", dest="alpha_spacing",
                   choices=["regular", "quadratic"], default=None)
    p.add_argument("--scheme", choices=["gl", "rect", "abm"], default=None)
    p.add_argument("--repeats", type=int, default=None,
                   help="timing repetitions; the median is reported")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--config", default=None,
                   help="key=value file supplying defaults for unset flags")
    p.add_argument("--case3-a", type=float, default=None,
                   help="case-3 left boundary value override")
    p.add_argument("--case3-b", type=float, default=None,
                   help="case-3 Robin weight override")
    p.add_argument("--case3-c", type=float, default=None,
                   help="case-3 Robin right-hand value override")


def _case3_constants(args: argparse.Namespace):
    triple = (args.case3_a, args.case3_b, args.case3_c)
    if all(v is None for v in triple):
        return None
    from .cases import CASE3_CONSTANTS
    defaults = (CASE3_CONSTANTS["a"], CASE3_CONSTANTS["b"], CASE3_CONSTANTS["c"])
    return tuple(v if v is not None else d for v, d in zip(triple, defaults))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracbvp",
        description="Benchmark staged fractional-order integration against "
                    "finite differences on four boundary-value problems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="solve one case with one or both methods")
    _add_common(p_run)
    p_run.add_argument("--trace", action="store_true",
                       help="record stage snapshots and emit SVG plots")

    p_table = sub.add_parser("table1", help="case-3 error/time table at "
                                            "N in {40, 80, 200}")
    p_table.add_argument("--out", default=None)
    p_table.add_argument("--repeats", type=int, default=None)
    p_table.add_argument("--config", default=None)

    p_sweep = sub.add_parser("sweep", help="run one case across several grids")
    _add_common(p_sweep)
    p_sweep.add_argument("--n-list", dest="n_list", default=None,
                         help="comma-separated grid sizes, e.g. 40,80,200")
    p_sweep.add_argument("--parallel", action="store_true",
                         help="solve independent grids concurrently "
                              "(ignored when timing with --repeats > 1)")
    return parser


def _report_lines(reports) -> list[str]:
    lines = []
    for r in reports:
        err = "n/a" if r.sup_error is None else f"{r.sup_error:.3e}"
        lines.append(f"{r.params['case']} {r.method:>4} n={r.params['n']:>4} "
                     f"error={err} time={r.wall_time:.3e}s status={r.status}")
    return lines


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    args = _merge_config(args)
    out_dir = args.out if args.out is not None else "."

    try:
        if args.command == "table1":
            path = table1(out_dir, repeats=args.repeats or 1)
            print(f"wrote {path}")
            return 0

        if args.case is None:
            print("error: --case is required", file=sys.stderr)
            return 2
        config = RunConfig(
            case_id=args.case,
            method=args.method or "both",
            n=args.n, m=args.m,
            spacing=args.alpha_spacing,
            scheme=args.scheme,
            repeats=args.repeats or 1,
            output_dir=out_dir,
            emit_trace=getattr(args, "trace", False),
            case3_constants=_case3_constants(args),
        )
        if args.command == "run":
            reports = run(config)
        else:
            if not args.n_list:
                print("error: sweep requires --n-list", file=sys.stderr)
                return 2
            n_list = [int(v) for v in str(args.n_list).split(",") if v]
            reports = sweep(args.case, n_list, config, parallel=args.parallel)
        for line in _report_lines(reports):
            print(line)
        return 0
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
