"""Command-line driver.

Exit codes: 0 success, 1 usage or input error, 2 infeasible board,
3 failed check (invariant violation, or a table mismatch outside the
exception registry), 4 node budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .construct import RECIPES, BadSide, BadSize, IncompatibleBoundary, Recipe
from .core import Infeasible, RctError, RookTourError, circuit_from_connections, parse_rct, serialize_rct
from .invariants import verify_all
from .render import FORMATS, RenderOptions, render
from .search import DEFAULT_BUDGET, BudgetExhausted, count_circuits, iter_connections, max_turns, minimize
from .verify import verify_table

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_CHECK, EXIT_BUDGET = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    raw = os.environ.get("ROOK_TOURS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _board(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rows", "-n", type=int, required=True)
    p.add_argument("--cols", "-m", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=_default_threads(),
                        help="worker processes for counting (default: $ROOK_TOURS_THREADS or 1)")
    parser = _Parser(prog="rooktours", description="Rook circuits on rectangular boards.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, **kw) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kw)

    p = add("count", help="number of circuits on a board")
    _board(p)

    p = add("enumerate", help="print circuits in enumeration order as RCT blocks")
    _board(p)
    p.add_argument("--limit", type=int, default=None)

    p = add("minimize", help="exact minimum of turns or straights")
    _board(p)
    p.add_argument("--objective", choices=("turns", "straights", "max-turns"), default="straights")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--emit", nargs=2, metavar=("FORMAT", "PATH"))

    p = add("construct", help="build an explicit minimal circuit")
    p.add_argument("--recipe", choices=RECIPES, required=True)
    p.add_argument("--side", type=int, help="board side for the spiral recipes")
    p.add_argument("--rows", "-n", type=int, help="rows for min-turn-rect, n for near-square")
    p.add_argument("--cols", "-m", type=int, help="columns for min-turn-rect")
    p.add_argument("--base", type=Path, help="RCT file wrapped by extend-plus4")
    p.add_argument("--emit", nargs=2, metavar=("FORMAT", "PATH"))

    p = add("check", help="run every invariant check on an RCT file")
    p.add_argument("file", type=Path)

    p = add("render", help="draw an RCT file")
    p.add_argument("file", type=Path)
    p.add_argument("--format", choices=FORMATS, default="ascii")
    p.add_argument("--cell-px", type=int, default=40)
    p.add_argument("--no-highlight", action="store_true")
    p.add_argument("--output", "-o", type=Path)

    p = add("verify-table", help="compare the closed forms with exact search")
    p.add_argument("--max-cells", type=int, default=36)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--output", "-o", type=Path)
    return parser


def _emit(circuit, spec: list[str] | None) -> None:
    if not spec:
        return
    fmt, path = spec
    if fmt == "rct":
        text = serialize_rct(circuit)
    elif fmt in FORMATS:
        text = render(circuit, RenderOptions(format=fmt))
    else:
        raise argparse.ArgumentTypeError(f"unknown emit format {fmt!r}")
    Path(path).write_text(text)


def _print_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _read_circuit(path: Path):
    return parse_rct(path.read_text())


def _cmd_count(args) -> int:
    print(count_circuits((args.rows, args.cols), threads=args.threads))
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    for bits in iter_connections((args.rows, args.cols), limit=args.limit):
        sys.stdout.write(serialize_rct(circuit_from_connections(bits)))
    return EXIT_OK


def _cmd_minimize(args) -> int:
    dims = (args.rows, args.cols)
    if args.objective == "max-turns":
        rep = max_turns(dims, budget=args.budget)
    else:
        rep = minimize(dims, args.objective, budget=args.budget)
    _print_json(rep.to_dict())
    _emit(rep.witness, args.emit)
    return EXIT_OK


def _cmd_construct(args) -> int:
    name = args.recipe
    if name in ("spiral-even", "spiral-odd"):
        if args.side is None:
            raise _UsageError(f"--side is required for {name}")
        recipe = Recipe(name, {"side": args.side})
    elif name == "min-turn-rect":
        if args.rows is None or args.cols is None:
            raise _UsageError("--rows and --cols are required for min-turn-rect")
        recipe = Recipe(name, {"rows": args.rows, "cols": args.cols})
    elif name == "near-square":
        if args.rows is None:
            raise _UsageError("--rows (n of the n x (n+1) board) is required for near-square")
        recipe = Recipe(name, {"n": args.rows})
    else:
        if args.base is None:
            raise _UsageError("--base FILE.rct is required for extend-plus4")
        recipe = Recipe(name, {"base": str(args.base)}, base=_read_circuit(args.base))
    circuit = recipe.build()
    claimed = recipe.claimed
    measured = recipe.measured(circuit)
    _print_json({
        "recipe": name,
        "params": recipe.params,
        "dims": {"rows": circuit.rows, "cols": circuit.cols},
        "claimed": claimed.to_dict(),
        "measured": measured,
        "ok": measured == claimed.value,
        "witness_rct": serialize_rct(circuit),
    })
    _emit(circuit, args.emit)
    return EXIT_OK


def _cmd_check(args) -> int:
    report = verify_all(_read_circuit(args.file))
    _print_json(report.to_dict())
    return EXIT_OK if report.all_pass else EXIT_CHECK


def _cmd_render(args) -> int:
    circuit = _read_circuit(args.file)
    text = render(circuit, RenderOptions(args.format, args.cell_px, not args.no_highlight))
    if args.output:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify_table(args) -> int:
    def progress(entry):
        print(f"{entry['rows']}x{entry['cols']}: {entry['category']}", file=sys.stderr)

    report = verify_table(args.max_cells, budget=args.budget, progress=progress)
    text = json.dumps(report.to_dict(), indent=2) + "\n"
    if args.output:
        args.output.write_text(text)
    sys.stdout.write(text)
    if report.unknown:
        return EXIT_BUDGET
    return EXIT_OK if report.ok else EXIT_CHECK


class _UsageError(Exception):
    pass


COMMANDS = {
    "count": _cmd_count,
    "enumerate": _cmd_enumerate,
    "minimize": _cmd_minimize,
    "construct": _cmd_construct,
    "check": _cmd_check,
    "render": _cmd_render,
    "verify-table": _cmd_verify_table,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except Infeasible as exc:
        print(f"rooktours: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BudgetExhausted as exc:
        print(f"rooktours: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (_UsageError, RctError, BadSide, BadSize, OSError, argparse.ArgumentTypeError) as exc:
        print(f"rooktours: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IncompatibleBoundary, RookTourError) as exc:
        print(f"rooktours: {exc}", file=sys.stderr)
        return EXIT_CHECK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
