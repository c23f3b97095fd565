"""Command-line interface.

Subcommands: run, sweep-k, beampattern, list-scenarios.  Scenarios are
either built-in names (fig1a, fig1b, fig2) or paths to flat key=value
config files; --trials and --seed override the scenario's values.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from .harness import beampattern_table, run_k_sweep, run_scenario
from .scenarios import builtin_scenario, builtin_scenario_names, load_scenario_file

logger = logging.getLogger("beamsim")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beamsim",
        description="Monte Carlo SINR experiments for adaptive beamformers on uniform linear arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--scenario", required=True, help="built-in name or config file path")
        p.add_argument("--out", help="output CSV path (default <scenario>_<command>.csv)")
        p.add_argument("--trials", type=int, help="override the trial count")
        p.add_argument("--seed", type=int, help="override the master seed")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")

    p_run = sub.add_parser("run", help="run a scenario and write the SINR-vs-snapshot CSV")
    add_common(p_run)

    p_sweep = sub.add_parser("sweep-k", help="sweep the iteration count; CSV has one row per K")
    add_common(p_sweep)
    p_sweep.add_argument(
        "--k-values",
        default="1,2,3,4,5,6,7,8",
        help="comma list of iteration counts (default 1..8)",
    )

    p_bp = sub.add_parser("beampattern", help="write final-weight beampatterns from trial 0")
    add_common(p_bp)
    p_bp.add_argument("--grid-points", type=int, default=721)

    sub.add_parser("list-scenarios", help="list built-in scenarios")
    return parser


def _load_scenario(args):
    name = args.scenario
    if name in builtin_scenario_names():
        scenario = builtin_scenario(name)
    else:
        scenario = load_scenario_file(name)
    if args.trials is not None:
        scenario = replace(scenario, num_trials=args.trials)
    if args.seed is not None:
        scenario = replace(scenario, master_seed=args.seed)
    return scenario


def _default_out(scenario_name: str, command: str) -> str:
    suffix = {"run": "", "sweep-k": "_ksweep", "beampattern": "_beampattern"}[command]
    return f"{scenario_name}{suffix}.csv"


def cli_main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING if getattr(args, "quiet", False) else logging.INFO,
        format="%(message)s",
    )

    if args.command == "list-scenarios":
        for name in builtin_scenario_names():
            s = builtin_scenario(name)
            print(
                f"{name}: m={s.geometry.num_sensors}, q={1 + s.num_interferers}, "
                f"N={s.num_snapshots}, trials={s.num_trials}, "
                f"mismatch={s.mismatch_deg} deg, beamformers={[b.kind for b in s.beamformers]}"
            )
        return 0

    try:
        scenario = _load_scenario(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "run":
            table = run_scenario(scenario)
        elif args.command == "sweep-k":
            try:
                k_values = [int(v) for v in args.k_values.split(",") if v.strip()]
            except ValueError:
                print(f"error: bad --k-values {args.k_values!r}", file=sys.stderr)
                return 2
            table = run_k_sweep(scenario, k_values)
        else:
            table = beampattern_table(scenario, grid_points=args.grid_points)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    out = args.out or _default_out(scenario.name, args.command)
    table.write_csv(out)
    logger.info("wrote %s (%d rows)", out, len(table.x_values))
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
