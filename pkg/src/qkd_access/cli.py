"""Command-line interface.

Subcommands:

* ``sweep``            evaluate one protocol/setup over a variable, write CSV
* ``noise``            noise-component breakdown versus feeder length, write CSV
* ``crossover``        clock rate where the DV link overtakes the CV link
* ``validate-config``  parse and sanity-check a configuration file

All subcommands accept ``--config FILE`` (JSON overriding the built-in
defaults), repeated ``--set section.key=value`` overrides, and ``--table
FILE`` to use an external Raman cross-section CSV.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .config import ConfigError, SimulationConfig
from .sweep import (
    PROTOCOLS,
    SWEEP_VARIABLES,
    SweepSpec,
    dv_cv_crossover,
    emit_csv,
    noise_breakdown,
    run_sweep,
)

__all__ = ["main", "build_parser"]


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="JSON config file overriding the defaults")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config key by dotted path, e.g. dv.mu=0.4",
    )
    parser.add_argument("--table", help="Raman cross-section CSV replacing the built-in table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qkd-access",
        description="Key-rate simulator for wireless-indoor QKD over a DWDM access network",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="sweep one variable and write a CSV of key rates")
    sweep.add_argument("--setup", type=int, required=True, choices=(1, 2, 3, 4))
    sweep.add_argument("--protocol", required=True, choices=PROTOCOLS)
    sweep.add_argument("--case", type=int, default=None, choices=(1, 2, 3),
                       help="transmitter placement case (default: config value)")
    sweep.add_argument("--var", required=True, choices=SWEEP_VARIABLES)
    sweep.add_argument("--start", type=float, required=True)
    sweep.add_argument("--stop", type=float, required=True)
    sweep.add_argument("--points", type=int, default=50)
    sweep.add_argument("--log", action="store_true", help="log-spaced grid")
    sweep.add_argument("--out", required=True, help="output CSV path")
    _add_common(sweep)

    noise = sub.add_parser("noise", help="noise breakdown versus feeder length")
    noise.add_argument("--setup", type=int, required=True, choices=(1, 2, 3, 4))
    noise.add_argument("--l0-start", type=float, default=1.0)
    noise.add_argument("--l0-stop", type=float, default=100.0)
    noise.add_argument("--points", type=int, default=50)
    noise.add_argument("--out", required=True, help="output CSV path")
    _add_common(noise)

    crossover = sub.add_parser(
        "crossover", help="DV clock rate matching the CV total key rate at the operating point"
    )
    crossover.add_argument("--setup", type=int, default=2, choices=(1, 2))
    _add_common(crossover)

    validate = sub.add_parser("validate-config", help="check a config file and print the result")
    _add_common(validate)

    return parser


def _load_config(args) -> SimulationConfig:
    cfg = SimulationConfig.from_file(args.config)
    overrides = list(args.overrides)
    if args.table:
        overrides.append(f"raman_table.path={args.table}")
    if overrides:
        cfg = cfg.override(overrides)
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)

        if args.command == "validate-config":
            cfg.raman_table()  # force table load so path errors surface here
            print("configuration OK")
            print(f"config sha256: {cfg.sha256}")
            print(json.dumps(cfg.data, indent=2, sort_keys=True))
            return 0

        if args.command == "sweep":
            spec = SweepSpec(
                setup=args.setup,
                protocol=args.protocol,
                case=cfg.data["case"] if args.case is None else args.case,
                variable=args.var,
                start=args.start,
                stop=args.stop,
                points=args.points,
                log_spacing=args.log,
            )
            result = run_sweep(spec, cfg)
            emit_csv(result, args.out)
            positive = sum(1 for row in result.rows if row.rate_per_pulse > 0.0)
            print(f"wrote {args.out}: {len(result.rows)} points, {positive} with positive rate")
            return 0

        if args.command == "noise":
            values = [float(v) for v in np.linspace(args.l0_start, args.l0_stop, args.points)]
            result = noise_breakdown(args.setup, cfg, values)
            emit_csv(result, args.out)
            print(f"wrote {args.out}: {len(result.rows)} points")
            return 0

        if args.command == "crossover":
            clock = dv_cv_crossover(cfg, setup=args.setup)
            if math.isinf(clock):
                print("crossover: none within the searchable clock range")
            else:
                print(f"crossover clock: {clock:.6e} Hz")
            return 0

        raise AssertionError(f"unhandled command {args.command}")
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
