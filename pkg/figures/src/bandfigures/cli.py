"""figures <kind> --in <csv...> --out <svg> [--style <json>]"""

from __future__ import annotations

import argparse
import json
import sys

from .io import InputError, ParseError
from .render import FIGURE_KINDS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures",
        description="Deterministic SVG figures from band-structure CSV artifacts",
    )
    parser.add_argument("kind", choices=FIGURE_KINDS)
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="CSV", help="input CSV (repeatable)")
    parser.add_argument("--out", required=True, metavar="SVG", help="output SVG path")
    parser.add_argument("--style", metavar="JSON", help="optional style config file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    style = {}
    if args.style:
        try:
            with open(args.style, "r", encoding="utf-8") as fh:
                style = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            print(f"figures: bad style config: {e}", file=sys.stderr)
            return 1
        if not isinstance(style, dict):
            print("figures: style config must be a JSON object", file=sys.stderr)
            return 1
    try:
        render(FigureSpec(args.kind, args.inputs, args.out, style))
    except (ParseError, InputError, OSError) as e:
        print(f"figures: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
