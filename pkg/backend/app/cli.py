"""
Polylink CLI
============
Line-oriented front end over the command registry.

    polylink validate square.poly
    polylink classify square.poly 1/2 1/2
    polylink path hexagon.poly 1/2 7/4 7/4 1/2 --svg path.svg
    polylink linkdist spiral6.poly --domain int 1/2 0 -2 -1
    polylink classify square.poly -- -1/2 1/2
    polylink gen spiral 7 --out spiral7.poly --verify

Exit codes: 0 on success, 1 on domain errors, 2 on usage errors and unreadable
files. Results go
to stdout, diagnostics to stderr.
"""

import argparse
import logging
import sys
from typing import List, Optional

from app.config import DEFAULT_SEED, LOG_LEVEL, VERIFY_BUDGET
from app.errors import PolylinkError
from app.geometry.exact import Point, scalar
from app.tools.commands import COMMANDS, CommandResult
from app.tools.svg import emit_svg

logger = logging.getLogger(__name__)


def _scalar_arg(text: str):
    try:
        return scalar(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _point(pair) -> Point:
    return Point(pair[0], pair[1])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polylink", description="Exact polygonal paths around simple polygons")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="root log level (stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    def polygon_command(name: str, help_text: str, points: int = 0) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("polygon", help="polygon file")
        for label in "ab"[:points]:
            p.add_argument(label, nargs=2, type=_scalar_arg, metavar=("X", "Y"))
        p.add_argument("--svg", help="also write an SVG drawing here")
        return p

    polygon_command("validate", "check that the file describes a simple polygon")

    p = sub.add_parser("classify", help="interior / exterior / boundary feature of a point")
    p.add_argument("polygon")
    p.add_argument("a", nargs=2, type=_scalar_arg, metavar=("X", "Y"))
    p.add_argument("--svg")

    p = polygon_command("visible", "vertices seen from a point", 1)
    p.add_argument("--seed", type=int, default=None)

    p = polygon_command("path", "certified path between two points", 2)
    p.add_argument("--naive", action="store_true", help="use the seen-edge construction")
    p.add_argument("--seed", type=int, default=None)

    p = polygon_command("linkdist", "oracle link distance between two points", 2)
    p.add_argument("--domain", choices=["int", "ext"])
    p.add_argument("--max-n", type=int, default=None)

    p = polygon_command("poldiam", "sampled lower bound on the polygonal diameter")
    p.add_argument("--domain", choices=["int", "ext"], required=True)
    p.add_argument("--budget", type=int, default=24)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)

    p = sub.add_parser("gen", help="generate an extremal polygon")
    p.add_argument("family", choices=["spiral"])
    p.add_argument("n", type=int)
    p.add_argument("--out", help="write the polygon file here instead of stdout")
    p.add_argument("--svg")
    p.add_argument("--verify", action="store_true", help="check both witness pairs with the oracle")
    p.add_argument("--budget", type=int, default=None,
                   help=f"sampled points per component for the bound check (default {VERIFY_BUDGET}, 0 skips)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)
    return parser


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def _dispatch(args: argparse.Namespace) -> CommandResult:
    seed = DEFAULT_SEED if getattr(args, "seed", None) is None else args.seed
    command = COMMANDS[args.command]
    if args.command == "gen":
        return command(args.n, check=args.verify, budget=args.budget, seed=seed, max_n=args.max_n)

    text = _read(args.polygon)
    if args.command == "validate":
        return command(text)
    if args.command == "classify":
        return command(text, _point(args.a))
    if args.command == "visible":
        return command(text, _point(args.a), seed)
    if args.command == "path":
        return command(text, _point(args.a), _point(args.b), naive=args.naive, seed=seed)
    if args.command == "linkdist":
        return command(text, _point(args.a), _point(args.b), args.domain, args.max_n)
    return command(text, args.domain, args.budget, seed, args.max_n)


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    """Run one subcommand; returns the process exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gen" and args.n < 3:
            parser.error(f"spiral needs n >= 3, got {args.n}")
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(level=args.log_level.upper(), stream=err,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        result = _dispatch(args)
    except (PolylinkError, ValueError) as e:
        print(f"error: {e}", file=err)
        return 1
    except OSError as e:
        print(f"error: {e}", file=err)
        return 2

    if getattr(args, "out", None) and result.document is not None:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(result.document)
        report = result.lines[result.document.count("\n"):]
        out.write("".join(f"{line}\n" for line in [f"wrote {args.out}"] + report))
    else:
        out.write(result.text)

    if args.svg and result.scene is not None:
        with open(args.svg, "w", encoding="utf-8") as f:
            f.write(emit_svg(result.scene))
        logger.info("wrote %s", args.svg)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
