"""Command-line interface.

Exit codes: 0 success or Correct, 1 graded but not correct (and failed
self-tests), 2 rejected input, 3 usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dictation import DictationExercise
from .grid import (
    GRID_HALF,
    Coloring,
    DepthCapExceeded,
    GridExercise,
    UnknownConstant,
    eval_extension,
)
from .packs import ExercisePack, PackError, builtin_packs, load_pack, selftest
from .service import check_response, create_app
from .syntax import Dialect, ParseError, free_symbols, parse

EXIT_OK = 0
EXIT_INCORRECT = 1
EXIT_REJECTED = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser() -> _Parser:
    parser = _Parser(prog="folex", description="First-order formalization exercises.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list available exercises")

    p_check = sub.add_parser("check", help="grade a formula against an exercise")
    p_check.add_argument("--exercise", required=True, help="exercise id")
    p_check.add_argument("--formula", required=True, help="formula text")
    p_check.add_argument("--json", action="store_true", help="emit the service JSON")

    p_eval = sub.add_parser("eval-grid", help="print the extension of a grid formula")
    p_eval.add_argument("--formula", required=True, help="grid-dialect formula")
    p_eval.add_argument("--exercise", help="grid exercise id supplying the constants")
    p_eval.add_argument("--json", action="store_true", help="emit the extension as JSON")

    p_self = sub.add_parser("selftest", help="validate stored solutions of a pack")
    p_self.add_argument("--pack", help="pack file (defaults to the builtin packs)")

    p_serve = sub.add_parser("serve", help="run the HTTP grading service")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument(
        "--pack", action="append", default=[], help="additional pack file (repeatable)"
    )
    p_serve.add_argument("--cors", help="allowed CORS origin for the web UI")
    return parser


def _all_exercises(packs: list[ExercisePack]) -> dict:
    out = {}
    for p in packs:
        for ex in p.exercises:
            out[ex.id] = ex
    return out


def _render_board(coloring: Coloring) -> str:
    lines = []
    for row in range(GRID_HALF, -GRID_HALF - 1, -1):
        cells = []
        for col in range(-GRID_HALF, GRID_HALF + 1):
            probe = next(
                (
                    mark
                    for mark, squares in (
                        ("G", coloring.green),
                        ("R", coloring.red),
                        ("Y", coloring.yellow),
                    )
                    if any(s.col == col and s.row == row for s in squares)
                ),
                "·",
            )
            cells.append(probe)
        lines.append("".join(cells))
    return "\n".join(lines)


def _cmd_list(args) -> int:
    for ex in _all_exercises(builtin_packs()).values():
        if isinstance(ex, DictationExercise):
            print(f"{ex.id}\tdictation\t{ex.prompt}")
        else:
            print(f"{ex.id}\tgrid\t{ex.description}")
    return EXIT_OK


def _cmd_check(args) -> int:
    exercises = _all_exercises(builtin_packs())
    ex = exercises.get(args.exercise)
    if ex is None:
        print(f"unknown exercise: {args.exercise}", file=sys.stderr)
        return EXIT_USAGE
    body = check_response(ex, args.formula)
    if args.json:
        print(json.dumps(body, ensure_ascii=False))
    else:
        print(f"{body['category']}: {body['message']}")
        if "coloring" in body:
            coloring = Coloring(
                green=frozenset(_parse_coords(body["coloring"]["green"])),
                red=frozenset(_parse_coords(body["coloring"]["red"])),
                yellow=frozenset(_parse_coords(body["coloring"]["yellow"])),
            )
            print(_render_board(coloring))
    if body["category"] == "correct":
        return EXIT_OK
    if body["category"] == "rejected":
        return EXIT_REJECTED
    return EXIT_INCORRECT


def _parse_coords(pairs):
    from .grid import GridCoord

    return [GridCoord(c, r) for c, r in pairs]


def _cmd_eval_grid(args) -> int:
    if args.exercise:
        ex = _all_exercises(builtin_packs()).get(args.exercise)
        if ex is None or not isinstance(ex, GridExercise):
            print(f"unknown grid exercise: {args.exercise}", file=sys.stderr)
            return EXIT_USAGE
    else:
        ex = GridExercise(id="adhoc", description="", target=frozenset())
    try:
        f = parse(args.formula, Dialect.GRID)
    except ParseError as e:
        print(f"rejected: {e}", file=sys.stderr)
        return EXIT_REJECTED
    free = free_symbols(f) - set(ex.constants)
    if len(free) != 1:
        print("rejected: the formula must have exactly one free variable", file=sys.stderr)
        return EXIT_REJECTED
    try:
        extension = eval_extension(ex, f, next(iter(free)))
    except (DepthCapExceeded, UnknownConstant) as e:
        print(f"rejected: {e}", file=sys.stderr)
        return EXIT_REJECTED
    pairs = [[c.col, c.row] for c in sorted(extension)]
    print(json.dumps(pairs, separators=(",", ":")))
    return EXIT_OK


def _cmd_selftest(args) -> int:
    if args.pack:
        packs = [load_pack(args.pack)]
    else:
        packs = builtin_packs()
    ok = True
    for pack in packs:
        report = selftest(pack)
        for entry in report.entries:
            status = "PASS" if entry.passed else "FAIL"
            print(f"{status} {pack.name}/{entry.exercise_id}: {entry.detail}")
        ok = ok and report.all_passed
    return EXIT_OK if ok else EXIT_INCORRECT


def _cmd_serve(args) -> int:
    import uvicorn

    packs = builtin_packs()
    for path in args.pack:
        packs.append(load_pack(path))
    app = create_app(packs, cors_origin=args.cors)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "list":
            return _cmd_list(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "eval-grid":
            return _cmd_eval_grid(args)
        if args.command == "selftest":
            return _cmd_selftest(args)
        if args.command == "serve":
            return _cmd_serve(args)
    except (OSError, PackError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    raise AssertionError("unreachable")


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
