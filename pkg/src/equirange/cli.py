"""Command line front end.

    equirange coin   --n-max 10000 --runs 5 --seed 42 --out-dir out/coin
    equirange primes --limit 100000 --out-dir out/primes
    equirange fit    out/coin/summary.csv --y-column mean_rel_range
    equirange plot   out/coin/summary.csv --figure relrange --out relrange.gp
    equirange replay out/coin/manifest.json --out-dir again/

Exit status is 0 on success, 1 on I/O or other runtime failure and 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .errors import EquirangeError
from .experiment import FIT_MODES, ExperimentConfig, run_ensemble
from .fit import DEFAULT_FIT_MIN_N, fit_power_law
from .io import (
    MANIFEST_NAME,
    fit_to_json,
    read_columns,
    read_fit_json,
    read_manifest,
    write_manifest,
    write_report,
)
from .plot import FIGURES, freqs_script, scaling_script
from .tally import DEFAULT_N_MIN, DEFAULT_POINTS_PER_DECADE

log = logging.getLogger("equirange")

GLOBAL_DEFAULTS = {
    "out_dir": "out",
    "seed": 0,
    "points_per_decade": DEFAULT_POINTS_PER_DECADE,
    "n_min": DEFAULT_N_MIN,
    "fit_min_n": DEFAULT_FIT_MIN_N,
}


class UsageError(Exception):
    pass


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def seed_int(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2**64)")
    return v


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    # without the subparser's default clobbering the top-level value
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--out-dir", default=argparse.SUPPRESS, help="output directory (default: out)")
    g.add_argument("--seed", type=seed_int, default=argparse.SUPPRESS,
                   help="root seed for simulated runs (default: 0)")
    g.add_argument("--points-per-decade", type=positive_int, default=argparse.SUPPRESS,
                   help=f"checkpoint density (default: {DEFAULT_POINTS_PER_DECADE})")
    g.add_argument("--n-min", type=positive_int, default=argparse.SUPPRESS,
                   help=f"first checkpoint (default: {DEFAULT_N_MIN})")
    g.add_argument("--fit-min-n", type=positive_int, default=argparse.SUPPRESS,
                   help=f"smallest N used in fits (default: {DEFAULT_FIT_MIN_N})")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(
        prog="equirange", parents=[common],
        description="Frequency-range scaling of coin tosses and prime last digits.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    coin = sub.add_parser("coin", parents=[common], help="simulate ensembles of fair trials")
    coin.add_argument("--n-max", type=positive_int, default=10_000, help="trials per run")
    coin.add_argument("--runs", type=positive_int, default=5, help="number of runs")
    coin.add_argument("--outcomes", type=int, default=2, metavar="K",
                      help="equally likely outcomes per trial (2 = coin)")
    coin.add_argument("--fit-mode", choices=FIT_MODES, default="mean-then-fit")
    coin.add_argument("--weighted", action="store_true",
                      help="weight the fit by the ensemble standard errors")
    coin.set_defaults(func=cmd_coin)

    primes = sub.add_parser("primes", parents=[common], help="last digits of primes")
    primes.add_argument("--limit", type=int, default=100_000, help="largest integer sieved")
    primes.add_argument("--base", type=int, default=10)
    primes.set_defaults(func=cmd_primes)

    fit = sub.add_parser("fit", parents=[common], help="power-law fit of two CSV columns")
    fit.add_argument("input", help="CSV file with a header row")
    fit.add_argument("--x-column", default="n")
    fit.add_argument("--y-column", default="mean_rel_range")
    fit.set_defaults(func=cmd_fit)

    plot = sub.add_parser("plot", parents=[common], help="write a gnuplot script")
    plot.add_argument("inputs", nargs="+",
                      help="summary CSV (range, relrange) or trajectory CSVs (freqs)")
    plot.add_argument("--figure", required=True, help=f"one of {', '.join(FIGURES)}")
    plot.add_argument("--out", required=True, help="path of the script to write")
    plot.add_argument("--fit-json", help="take the fitted line from this file instead of refitting")
    plot.set_defaults(func=cmd_plot)

    replay = sub.add_parser("replay", parents=[common], help="rerun the config in a manifest")
    replay.add_argument("manifest")
    replay.set_defaults(func=cmd_replay)
    return parser


def _run_and_write(config: ExperimentConfig, out_dir) -> int:
    report = run_ensemble(config)
    paths = write_report(report, out_dir)
    write_manifest(config, [p.name for p in paths], Path(out_dir) / MANIFEST_NAME)
    beta = report.beta_fit
    truncated = [t.run_id for t in report.trajectories if t.truncated]
    if truncated:
        log.warning("source ran out before n_max=%d in runs %s", config.n_max, truncated)
    print(f"alpha = {report.alpha_fit.exponent:.4f} (+/- {report.alpha_fit.exponent_se:.4f})")
    print(f"beta  = {beta.exponent:.4f} (+/- {beta.exponent_se:.4f})")
    print(f"wrote {len(paths) + 1} files to {out_dir}")
    return 0


def _schedule_kw(args) -> dict:
    return dict(points_per_decade=args.points_per_decade, n_min=args.n_min,
                fit_min_n=args.fit_min_n)


def cmd_coin(args) -> int:
    if args.outcomes < 2:
        raise UsageError("--outcomes must be at least 2")
    kw = dict(n_max=args.n_max, num_runs=args.runs, seed=args.seed,
              fit_mode=args.fit_mode, weighted=args.weighted, **_schedule_kw(args))
    if args.outcomes == 2:
        config = ExperimentConfig.coin(**kw)
    else:
        config = ExperimentConfig.categorical(k=args.outcomes, **kw)
    return _run_and_write(config, args.out_dir)


def cmd_primes(args) -> int:
    config = ExperimentConfig.primes(limit=args.limit, base=args.base, **_schedule_kw(args))
    return _run_and_write(config, args.out_dir)


def _float_column(cols, name):
    if name not in cols:
        raise UsageError(f"column {name!r} not found (have: {', '.join(cols)})")
    try:
        return [float(v) for v in cols[name]]
    except ValueError as exc:
        raise UsageError(f"column {name!r} is not numeric: {exc}") from None


def cmd_fit(args) -> int:
    cols = read_columns(args.input)
    xs = _float_column(cols, args.x_column)
    ys = _float_column(cols, args.y_column)
    fit = fit_power_law(zip(xs, ys), min_n=args.fit_min_n)
    sys.stdout.write(fit_to_json(fit))
    return 0


def cmd_plot(args) -> int:
    if args.figure not in FIGURES:
        raise UsageError(f"unknown figure {args.figure!r}; choose from {', '.join(FIGURES)}")
    out = Path(args.out)
    image = out.with_suffix(".svg")
    headers = []
    for path in args.inputs:
        cols = read_columns(path)
        if not cols:
            raise UsageError(f"{path} is empty")
        headers.append((path, list(cols)))

    if args.figure == "freqs":
        if not all(any(h.startswith("f_") for h in header) for _, header in headers):
            raise UsageError("freqs needs trajectory CSVs (f_0 .. f_k-1 columns)")
        text = freqs_script(headers, image, version=__version__)
    else:
        if len(headers) != 1:
            raise UsageError(f"{args.figure} takes exactly one summary CSV")
        path, header = headers[0]
        if args.fit_json:
            fit = read_fit_json(args.fit_json)
        else:
            ycol = "mean_range" if args.figure == "range" else "mean_rel_range"
            cols = read_columns(path)
            fit = fit_power_law(zip(_float_column(cols, "n"), _float_column(cols, ycol)),
                                min_n=args.fit_min_n)
        for needed in ("n", "mean_range", "se_range", "mean_rel_range", "se_rel_range"):
            if needed not in header:
                raise UsageError(f"{path} is not a summary CSV (missing {needed!r})")
        text = scaling_script(path, header, args.figure, fit, image, version=__version__)

    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    print(f"wrote {out}")
    return 0


def cmd_replay(args) -> int:
    config, _ = read_manifest(args.manifest)
    return _run_and_write(config, args.out_dir)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, EquirangeError) as exc:
        print(f"equirange {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, KeyError, ValueError) as exc:
        print(f"equirange {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
