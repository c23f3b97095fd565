"""plot: render a SINR CSV table to an image file."""

from __future__ import annotations

import argparse
import sys

from .plotting import PlotSpec, render
from .reader import CsvFormatError, read_table


def cli_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render SINR-vs-snapshot or SINR-vs-iteration CSV tables as images.",
    )
    parser.add_argument("--csv", required=True, help="input CSV table")
    parser.add_argument("--out", required=True, help="output image path (png, pdf, svg, ...)")
    parser.add_argument(
        "--mode",
        choices=("auto", "trace", "sweep"),
        default="auto",
        help="trace: lines over snapshots; sweep: markers per iteration count "
        "(default: auto-detect from the header)",
    )
    parser.add_argument("--title", default="", help="figure title (default: scenario metadata)")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)

    try:
        table = read_table(args.csv)
        render(table, PlotSpec(args.csv, args.out, args.mode, args.title, args.dpi))
    except (CsvFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
