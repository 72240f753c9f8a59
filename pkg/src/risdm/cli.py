"""Command-line front end.

Subcommands::

    risdm sweep --config c.json --axis power_dbm --values 7,12,17,22,27
                --methods max-sv,leakage --ris gpg,none --pa fixed
                --trials 1 --seed 1 --out sweep.csv
    risdm pa-surface --config c.json --step 0.01 --out surface.csv
    risdm scenario dump --config c.json

Omitting --config uses the built-in default scenario.  Exit code 0 on
success, 1 with a diagnostic on stderr otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys

from .geometry import ScenarioConfig, default_config, geometry_summary
from .ris import MODES as RIS_MODES
from .sim import AXES, METHODS, PA_MODES, SweepSpec, pa_surface, run_sweep, write_csv


def _load_config(path):
    if path is None:
        return default_config()
    return ScenarioConfig.from_file(path)


def _csv_list(text):
    return tuple(item.strip() for item in text.split(",") if item.strip())


def _float_list(text):
    return tuple(float(item) for item in _csv_list(text))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="risdm",
        description="Double-RIS two-way directional-modulation network simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a parameter sweep and write CSV records")
    sweep.add_argument("--config", default=None, help="scenario JSON (default: built-in)")
    sweep.add_argument("--axis", required=True, choices=AXES)
    sweep.add_argument("--values", required=True, type=_float_list,
                       help="comma-separated, strictly increasing axis values")
    sweep.add_argument("--methods", type=_csv_list, default=("max-sv",),
                       help=f"comma-separated subset of {METHODS}")
    sweep.add_argument("--ris", type=_csv_list, default=("gpg",),
                       help=f"comma-separated subset of {RIS_MODES}")
    sweep.add_argument("--pa", type=_csv_list, default=("fixed",),
                       help=f"comma-separated subset of {PA_MODES}")
    sweep.add_argument("--grid-step", type=float, default=None,
                       help="grid-search step for es1d/es2d (defaults: 0.001 / 0.01)")
    sweep.add_argument("--pa-seed", type=int, default=None,
                       help="fixed optimizer seed (default: per-point sub-seed)")
    sweep.add_argument("--trials", type=int, default=1)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--out", required=True, help="output CSV path")

    surface = sub.add_parser("pa-surface", help="SSR over the (beta1, beta2) grid")
    surface.add_argument("--config", default=None)
    surface.add_argument("--step", type=float, default=0.01)
    surface.add_argument("--method", default="max-sv", choices=METHODS)
    surface.add_argument("--ris", default="gpg", choices=RIS_MODES)
    surface.add_argument("--out", required=True)

    scenario = sub.add_parser("scenario", help="scenario inspection")
    scen_sub = scenario.add_subparsers(dest="scenario_command", required=True)
    dump = scen_sub.add_parser("dump", help="print the fully resolved geometry as JSON")
    dump.add_argument("--config", default=None)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            config = _load_config(args.config)
            spec = SweepSpec(
                axis=args.axis, values=args.values, methods=args.methods,
                ris_modes=args.ris, pa_modes=args.pa,
                trials=args.trials, seed=args.seed,
                pa_grid_step=args.grid_step, pa_seed=args.pa_seed,
            )
            records = run_sweep(config, spec, workers=args.workers)
            write_csv(records, args.out)
            print(f"wrote {len(records)} records to {args.out}")
        elif args.command == "pa-surface":
            config = _load_config(args.config)
            records = pa_surface(config, step=args.step, method=args.method, ris_mode=args.ris)
            write_csv(records, args.out)
            print(f"wrote {len(records)} records to {args.out}")
        elif args.command == "scenario":
            config = _load_config(args.config)
            print(json.dumps(geometry_summary(config), indent=2, sort_keys=True))
    except Exception as err:  # surfaced as a diagnostic, not a traceback
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
