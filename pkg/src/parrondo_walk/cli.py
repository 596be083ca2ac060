"""Command-line entry point: ``parrondo-walk run|sweep|list-presets``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import _kernels
from .exceptions import ConfigError, WalkError
from .experiments import (
    PRESETS,
    SWEEP_PRESETS,
    ExperimentConfig,
    SweepConfig,
    preset_names,
    report_json,
    run_experiment,
    run_sweep,
    sweep_csv,
)


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _summary(report):
    return json.dumps(report.as_dict(), indent=2)


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("<file>", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"not valid JSON: {exc}") from None
    return ExperimentConfig.from_mapping(data)


def _cmd_run(args):
    if args.preset in SWEEP_PRESETS:
        sweep = SWEEP_PRESETS[args.preset]
        if args.steps is not None:
            sweep = replace(sweep, steps=args.steps, window=min(sweep.window, args.steps))
        if args.window is not None:
            sweep = replace(sweep, window=args.window)
        rows = run_sweep(sweep, workers=args.workers)
        _write(sweep_csv(rows), args.out)
        return 0
    if args.preset is not None:
        if args.preset not in PRESETS:
            print(f"unknown preset {args.preset!r}; available presets:", file=sys.stderr)
            for name in preset_names():
                print(f"  {name}", file=sys.stderr)
            return 2
        config = PRESETS[args.preset]
    else:
        config = load_config(args.config)
    if args.steps is not None or args.window is not None:
        config = config.with_overrides(args.steps, args.window)

    report, series = run_experiment(config)
    text = report_json(report, series) if args.format == "json" else series.to_csv()
    _write(text, args.out)
    if args.out not in (None, "-"):
        report.series_path = args.out
    stream = sys.stdout if args.out not in (None, "-") else sys.stderr
    print(_summary(report), file=stream)
    return 0


def _cmd_sweep(args):
    if args.grid < 1:
        raise ConfigError("grid", f"must be >= 1, got {args.grid}")
    window = args.window if args.window is not None else min(200, args.steps)
    if not 1 <= window <= args.steps:
        raise ConfigError("window", f"must be in 1..steps ({args.steps}), got {window}")
    rows = run_sweep(SweepConfig(args.grid, args.steps, window), workers=args.workers)
    _write(sweep_csv(rows), args.out)
    return 0


def _cmd_list(args):
    for name, config in PRESETS.items():
        print(f"{name:15s} coins={config.coin_count} shift={config.shift} "
              f"schedule={config.build_schedule().name} steps={config.steps}")
    for name, sweep in SWEEP_PRESETS.items():
        print(f"{name:15s} theta sweep grid={sweep.grid} steps={sweep.steps} window={sweep.window}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="parrondo-walk", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s (backend: {_kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a figure preset or a JSON config")
    source = run.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset")
    source.add_argument("--config", help="path to a JSON experiment config")
    run.add_argument("--steps", type=int)
    run.add_argument("--window", type=int)
    run.add_argument("--out", help="output path (default: stdout)")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--workers", type=int, default=1, help=argparse.SUPPRESS)
    run.set_defaults(func=_cmd_run)

    sweep = sub.add_parser("sweep", help="theta sweep of the two-coin state")
    sweep.add_argument("--grid", type=int, default=64, help="number of theta points in [0, 2pi)")
    sweep.add_argument("--steps", type=int, default=800)
    sweep.add_argument("--window", type=int)
    sweep.add_argument("--out")
    sweep.add_argument("--workers", type=int, default=1)
    sweep.set_defaults(func=_cmd_sweep)

    lst = sub.add_parser("list-presets", help="print the available presets")
    lst.set_defaults(func=_cmd_list)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
