"""Exercise packs: loading, validation, saving, builtins and self-tests.

Pack files are strict UTF-8 JSON: unknown fields are rejected so that
authoring typos surface immediately, every embedded formula must parse,
and dictation entries must use exactly their declared symbols. Grid
entries carry a reference solution (never shown to users) so a pack can
prove its own targets are definable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .dictation import DictationCategory, DictationExercise, check_dictation
from .grid import GRID_HALF, GridCoord, GridExercise, all_squares, eval_extension
from .prover import ProverBounds, prove_implication
from .syntax import (
    Dialect,
    Formula,
    ParseError,
    free_symbols,
    parse,
    print_formula,
)

PACK_FORMAT_VERSION = "1"

Exercise = DictationExercise | GridExercise


class PackError(Exception):
    pass


class SchemaError(PackError):
    def __init__(self, location: str, reason: str):
        self.location = location
        self.reason = reason
        super().__init__(f"{location}: {reason}")


class FormulaError(PackError):
    def __init__(self, location: str, text: str, error: ParseError):
        self.location = location
        self.text = text
        self.error = error
        super().__init__(f"{location}: cannot parse {text!r}: {error}")


@dataclass(frozen=True)
class ExercisePack:
    name: str
    version: str
    exercises: tuple[Exercise, ...]
    grid_references: Mapping[str, Formula]  # exercise id -> reference solution

    def __post_init__(self):
        ids = [ex.id for ex in self.exercises]
        if len(ids) != len(set(ids)):
            raise ValueError("exercise ids must be unique within a pack")

    def find(self, exercise_id: str) -> Exercise | None:
        for ex in self.exercises:
            if ex.id == exercise_id:
                return ex
        return None


# ---------------------------------------------------------------------------
# Deserialization
# ---------------------------------------------------------------------------

def load_pack(path: str | Path) -> ExercisePack:
    """Read and validate a pack file."""
    raw = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SchemaError(str(path), f"not valid JSON: {e}") from e
    return pack_from_data(data, location=str(path))


def pack_from_data(data, location: str = "pack") -> ExercisePack:
    _expect_keys(data, {"name", "version", "exercises"}, set(), location)
    name = _expect_str(data, "name", location)
    version = _expect_str(data, "version", location)
    if not isinstance(data["exercises"], list):
        raise SchemaError(location, "'exercises' must be a list")
    exercises: list[Exercise] = []
    refs: dict[str, Formula] = {}
    for i, entry in enumerate(data["exercises"]):
        loc = f"{location}.exercises[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(loc, "each exercise must be an object")
        kind = entry.get("type")
        if kind == "dictation":
            exercises.append(_dictation_from_data(entry, loc))
        elif kind == "grid":
            ex, ref = _grid_from_data(entry, loc)
            exercises.append(ex)
            refs[ex.id] = ref
        else:
            raise SchemaError(loc, f"unknown exercise type {kind!r}")
    ids = [ex.id for ex in exercises]
    dupes = {x for x in ids if ids.count(x) > 1}
    if dupes:
        raise SchemaError(location, f"duplicate exercise ids: {sorted(dupes)}")
    return ExercisePack(name, version, tuple(exercises), refs)


def _dictation_from_data(entry: dict, loc: str) -> DictationExercise:
    _expect_keys(
        entry, {"type", "id", "prompt", "accepted", "symbols"}, {"gamma_limit"}, loc
    )
    ex_id = _expect_str(entry, "id", loc)
    prompt = _expect_str(entry, "prompt", loc)
    symbols = entry["symbols"]
    if not isinstance(symbols, list) or len(set(symbols)) != len(symbols):
        raise SchemaError(loc, "'symbols' must be a list of distinct letters")
    for s in symbols:
        if not (isinstance(s, str) and len(s) == 1 and "a" <= s <= "z"):
            raise SchemaError(loc, f"bad symbol {s!r}")
    accepted_raw = entry["accepted"]
    if not isinstance(accepted_raw, list) or not accepted_raw:
        raise SchemaError(loc, "'accepted' must be a nonempty list of formulas")
    accepted = []
    for j, text in enumerate(accepted_raw):
        if not isinstance(text, str):
            raise SchemaError(f"{loc}.accepted[{j}]", "formulas are strings")
        try:
            accepted.append(parse(text, Dialect.DICTATION))
        except ParseError as e:
            raise FormulaError(f"{loc}.accepted[{j}]", text, e) from e
    bounds = ProverBounds()
    if "gamma_limit" in entry:
        if not isinstance(entry["gamma_limit"], int) or entry["gamma_limit"] < 1:
            raise SchemaError(loc, "'gamma_limit' must be a positive integer")
        bounds = ProverBounds(gamma_limit=entry["gamma_limit"])
    try:
        return DictationExercise(
            id=ex_id,
            prompt=prompt,
            accepted=tuple(accepted),
            required_symbols=frozenset(symbols),
            bounds=bounds,
        )
    except ValueError as e:
        raise SchemaError(loc, str(e)) from e


def _grid_from_data(entry: dict, loc: str) -> tuple[GridExercise, Formula]:
    _expect_keys(
        entry,
        {"type", "id", "description", "constants", "target", "reference_solution"},
        {"depth_cap"},
        loc,
    )
    ex_id = _expect_str(entry, "id", loc)
    description = _expect_str(entry, "description", loc)
    constants_raw = entry["constants"]
    if not isinstance(constants_raw, dict):
        raise SchemaError(loc, "'constants' must map letters to [col,row] pairs")
    constants = {}
    for name, coords in constants_raw.items():
        constants[name] = _coord(coords, f"{loc}.constants[{name!r}]")
    target_raw = entry["target"]
    if not isinstance(target_raw, list):
        raise SchemaError(loc, "'target' must be a list of [col,row] pairs")
    target = frozenset(
        _coord(c, f"{loc}.target[{j}]") for j, c in enumerate(target_raw)
    )
    depth_cap = entry.get("depth_cap", 3)
    if not isinstance(depth_cap, int) or depth_cap < 1:
        raise SchemaError(loc, "'depth_cap' must be a positive integer")
    ref_text = entry["reference_solution"]
    if not isinstance(ref_text, str):
        raise SchemaError(loc, "'reference_solution' must be a formula string")
    try:
        ref = parse(ref_text, Dialect.GRID)
    except ParseError as e:
        raise FormulaError(f"{loc}.reference_solution", ref_text, e) from e
    try:
        ex = GridExercise(
            id=ex_id,
            description=description,
            target=target,
            constants=constants,
            depth_cap=depth_cap,
        )
    except ValueError as e:
        raise SchemaError(loc, str(e)) from e
    ref_free = free_symbols(ref) - set(ex.constants)
    if len(ref_free) != 1:
        raise SchemaError(
            f"{loc}.reference_solution",
            "the reference solution must have exactly one free variable",
        )
    return ex, ref


def _coord(value, loc: str) -> GridCoord:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        raise SchemaError(loc, "coordinates are [col,row] integer pairs")
    try:
        return GridCoord(value[0], value[1])
    except ValueError as e:
        raise SchemaError(loc, str(e)) from e


def _expect_keys(data, required: set[str], optional: set[str], loc: str):
    if not isinstance(data, dict):
        raise SchemaError(loc, "expected an object")
    missing = required - set(data)
    if missing:
        raise SchemaError(loc, f"missing fields: {sorted(missing)}")
    unknown = set(data) - required - optional
    if unknown:
        raise SchemaError(loc, f"unknown fields: {sorted(unknown)}")


def _expect_str(data: dict, key: str, loc: str) -> str:
    v = data[key]
    if not isinstance(v, str) or not v:
        raise SchemaError(loc, f"'{key}' must be a nonempty string")
    return v


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def pack_to_data(pack: ExercisePack) -> dict:
    exercises = []
    for ex in pack.exercises:
        if isinstance(ex, DictationExercise):
            entry = {
                "type": "dictation",
                "id": ex.id,
                "prompt": ex.prompt,
                "accepted": [print_formula(a, Dialect.DICTATION) for a in ex.accepted],
                "symbols": sorted(ex.required_symbols),
            }
            if ex.bounds.gamma_limit != 3:
                entry["gamma_limit"] = ex.bounds.gamma_limit
        else:
            entry = {
                "type": "grid",
                "id": ex.id,
                "description": ex.description,
                "constants": {
                    name: [c.col, c.row] for name, c in sorted(ex.constants.items())
                },
                "target": [[c.col, c.row] for c in sorted(ex.target)],
                "reference_solution": print_formula(
                    pack.grid_references[ex.id], Dialect.GRID
                ),
            }
            if ex.depth_cap != 3:
                entry["depth_cap"] = ex.depth_cap
        exercises.append(entry)
    return {"name": pack.name, "version": pack.version, "exercises": exercises}


def save_pack(pack: ExercisePack, path: str | Path):
    Path(path).write_text(
        json.dumps(pack_to_data(pack), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


# ---------------------------------------------------------------------------
# Self-test
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SelfTestEntry:
    exercise_id: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class SelfTestReport:
    entries: tuple[SelfTestEntry, ...]

    @property
    def all_passed(self) -> bool:
        return all(e.passed for e in self.entries)


def selftest(pack: ExercisePack) -> SelfTestReport:
    """Re-grade every stored solution: accepted dictation forms must grade
    Correct (and be pairwise equivalent), grid references must define
    exactly their targets."""
    entries = []
    for ex in pack.exercises:
        if isinstance(ex, DictationExercise):
            entries.append(_selftest_dictation(ex))
        else:
            entries.append(_selftest_grid(ex, pack.grid_references.get(ex.id)))
    return SelfTestReport(tuple(entries))


def _selftest_dictation(ex: DictationExercise) -> SelfTestEntry:
    problems = []
    for a in ex.accepted:
        text = print_formula(a, Dialect.DICTATION)
        verdict = check_dictation(ex, text)
        if verdict.category is not DictationCategory.CORRECT:
            problems.append(f"{text!r} graded {verdict.category.value}")
    theory = ex.theory()
    for i, a in enumerate(ex.accepted):
        for j, b in enumerate(ex.accepted):
            if i < j:
                fwd = prove_implication(a, b, ex.bounds, theory)
                bwd = prove_implication(b, a, ex.bounds, theory)
                if not (fwd.proved and bwd.proved):
                    problems.append(f"accepted[{i}] and accepted[{j}] not equivalent")
    if problems:
        return SelfTestEntry(ex.id, False, "; ".join(problems))
    return SelfTestEntry(ex.id, True, f"{len(ex.accepted)} accepted form(s) grade correct")


def _selftest_grid(ex: GridExercise, ref: Formula | None) -> SelfTestEntry:
    if ref is None:
        return SelfTestEntry(ex.id, False, "no reference solution stored")
    free = free_symbols(ref) - set(ex.constants)
    if len(free) != 1:
        return SelfTestEntry(ex.id, False, "reference solution needs one free variable")
    defined = eval_extension(ex, ref, next(iter(free)))
    if defined == set(ex.target):
        return SelfTestEntry(ex.id, True, f"reference defines all {len(ex.target)} squares")
    missing = len(set(ex.target) - defined)
    extra = len(defined - set(ex.target))
    return SelfTestEntry(
        ex.id, False, f"reference mismatch: {missing} missing, {extra} extra"
    )


# ---------------------------------------------------------------------------
# Builtin packs
# ---------------------------------------------------------------------------

def _sq(predicate) -> list[list[int]]:
    return [[s.col, s.row] for s in all_squares() if predicate(s.col, s.row)]


_DICTATION_PACK = {
    "name": "dictations",
    "version": PACK_FORMAT_VERSION,
    "exercises": [
        {
            "type": "dictation",
            "id": "density",
            "prompt": "Strictly between any two distinct real numbers, there is a third one.",
            "accepted": ["Ax:Ay:(x<y->Ez:(x<z&z<y))"],
            "symbols": [],
        },
        {
            "type": "dictation",
            "id": "strictly-increasing",
            "prompt": "The real function f is strictly increasing.",
            "accepted": ["Ax:Ay:(x<y->f(x)<f(y))"],
            "symbols": ["f"],
        },
        {
            "type": "dictation",
            "id": "zero-transfer",
            "prompt": "f has a zero whenever g has a zero.",
            "accepted": [
                "(Ex:g(x)=0->Ey:f(y)=0)",
                "(~Ey:f(y)=0->~Ex:g(x)=0)",
            ],
            "symbols": ["f", "g"],
        },
        {
            "type": "dictation",
            "id": "domination",
            "prompt": "f globally dominates g.",
            "accepted": ["Ax:g(x)<f(x)"],
            "symbols": ["f", "g"],
        },
        {
            "type": "dictation",
            "id": "convergence-to-zero",
            "prompt": (
                "f converges to 0. (Experimental: the language has no subtraction "
                "or absolute value, so the expected formalization brackets the "
                "tail of f between a negative and a positive bound.)"
            ),
            "accepted": ["Ae:Ad:((d<0&0<e)->Ex:Ay:(x<y->(d<f(y)&f(y)<e)))"],
            "symbols": ["f"],
        },
    ],
}

_GRID_PACK = {
    "name": "game-of-def",
    "version": PACK_FORMAT_VERSION,
    "exercises": [
        {
            "type": "grid",
            "id": "problem-01-cross",
            "description": "Alle Felder, die in derselben Zeile oder Spalte wie u liegen.",
            "constants": {},
            "target": _sq(lambda c, r: c == 0 or r == 0),
            "reference_solution": "dist(u,x)=dist(x,u)",
        },
        {
            "type": "grid",
            "id": "problem-02-right-arm",
            "description": "Alle Felder rechts von u.",
            "constants": {},
            "target": _sq(lambda c, r: r == 0 and c > 0),
            "reference_solution": "rechts(u,x)",
        },
        {
            "type": "grid",
            "id": "problem-03-neighbours",
            "description": "Die Nachbarn von u.",
            "constants": {},
            "target": _sq(lambda c, r: abs(c) + abs(r) == 1),
            "reference_solution": "nachbar(u,x)",
        },
        {
            "type": "grid",
            "id": "problem-04-border",
            "description": "Der Rand des Spielfelds.",
            "constants": {},
            "target": _sq(lambda c, r: abs(c) == GRID_HALF or abs(r) == GRID_HALF),
            "reference_solution": (
                "~((Ey:rechts(x,y)&Ey:links(x,y))&(Ey:ueber(x,y)&Ey:unter(x,y)))"
            ),
        },
        {
            "type": "grid",
            "id": "problem-05-ring",
            "description": "Alle Felder, die von u genauso weit entfernt sind wie a (entlang einer Linie).",
            "constants": {"a": [3, 0]},
            "target": [[3, 0], [-3, 0], [0, 3], [0, -3]],
            "reference_solution": "dist(u,x)=dist(u,a)",
        },
        {
            "type": "grid",
            "id": "problem-06-row",
            "description": "Die ganze Zeile durch a.",
            "constants": {"a": [4, 5]},
            "target": _sq(lambda c, r: r == 5),
            "reference_solution": "(rechts(a,x)v(links(a,x)vx=a))",
        },
        {
            "type": "grid",
            "id": "problem-07-quadrant",
            "description": "Alle Felder rechts oberhalb von u.",
            "constants": {},
            "target": _sq(lambda c, r: c > 0 and r > 0),
            "reference_solution": "Ey:(rechts(u,y)&ueber(y,x))",
        },
        {
            "type": "grid",
            "id": "problem-08-diagonal",
            "description": "Die Diagonale durch u (von links unten nach rechts oben).",
            "constants": {},
            "target": _sq(lambda c, r: c == r),
            "reference_solution": (
                "(Ey:(rechts(u,y)&(ueber(y,x)&dist(u,y)=dist(y,x)))"
                "v(Ey:(links(u,y)&(unter(y,x)&dist(u,y)=dist(y,x)))vx=u))"
            ),
        },
        {
            "type": "grid",
            "id": "problem-09-between",
            "description": "Alle Felder strikt zwischen a und b.",
            "constants": {"a": [-5, 0], "b": [5, 0]},
            "target": _sq(lambda c, r: r == 0 and -5 < c < 5),
            "reference_solution": "(rechts(a,x)&links(b,x))",
        },
        {
            "type": "grid",
            "id": "problem-10-corners",
            "description": "Die vier Ecken des Spielfelds.",
            "constants": {},
            "target": [
                [GRID_HALF, GRID_HALF],
                [GRID_HALF, -GRID_HALF],
                [-GRID_HALF, GRID_HALF],
                [-GRID_HALF, -GRID_HALF],
            ],
            "reference_solution": (
                "((~Ey:rechts(x,y)&~Ey:ueber(x,y))"
                "v((~Ey:rechts(x,y)&~Ey:unter(x,y))"
                "v((~Ey:links(x,y)&~Ey:ueber(x,y))"
                "v(~Ey:links(x,y)&~Ey:unter(x,y)))))"
            ),
        },
        {
            "type": "grid",
            "id": "problem-11-two-steps",
            "description": "Alle Felder, die man von u aus in genau zwei Nachbarschritten erreicht (ohne u selbst).",
            "constants": {},
            "target": _sq(lambda c, r: abs(c) + abs(r) == 2),
            "reference_solution": "(Ey:(nachbar(u,y)&nachbar(y,x))&~x=u)",
        },
        {
            "type": "grid",
            "id": "problem-12-upper-half",
            "description": "Alle Felder oberhalb der Zeile von u.",
            "constants": {},
            "target": _sq(lambda c, r: r > 0),
            "reference_solution": "Ey:(ueber(u,y)&(x=yv(rechts(y,x)vlinks(y,x))))",
        },
    ],
}


def builtin_packs() -> list[ExercisePack]:
    """The embedded dictation pack (5 exercises) and grid pack (12)."""
    return [
        pack_from_data(_DICTATION_PACK, "builtin:dictations"),
        pack_from_data(_GRID_PACK, "builtin:game-of-def"),
    ]
