"""Exact model checking of grid-dialect formulas over the 21x21 board.

A grid exercise fixes a target set of squares; a submission is a formula
with one free variable whose extension is computed exactly (441 squares,
quantifiers ranging over the whole board) and diffed against the target.

Evaluation is array-based: every subformula is evaluated to a boolean
array broadcast over one axis per quantifier scope (at most three axes
at a time; deeper quantifiers fall back to a short-circuited loop over
the board). This keeps worst-case depth-2 evaluation well under the
latency budget, which a per-square recursive walk cannot achieve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .syntax import (
    And,
    Atom,
    Dialect,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    ParseError,
    Pred,
    Sym,
    bound_variables,
    free_symbols,
    parse,
    quantifier_depth,
)

GRID_HALF = 10
GRID_SIZE = 2 * GRID_HALF + 1  # 21
N_SQUARES = GRID_SIZE * GRID_SIZE  # 441

# One array axis for the free variable plus one for the innermost
# quantifier; outer quantifiers are evaluated by a short-circuited loop.
# Wider arrays would be faster on paper, but a 441^3 boolean block is
# 86 MB and memory-bound in practice.
_MAX_AXES = 2


class DepthCapExceeded(Exception):
    def __init__(self, depth: int, cap: int):
        self.depth = depth
        self.cap = cap
        super().__init__(f"quantifier depth {depth} exceeds the cap of {cap}")


class UnknownConstant(Exception):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"letter {name!r} is not a constant of this exercise")


@dataclass(frozen=True, order=True)
class GridCoord:
    """A square: col grows rightward, row grows upward, (0,0) is u."""

    col: int
    row: int

    def __post_init__(self):
        if abs(self.col) > GRID_HALF or abs(self.row) > GRID_HALF:
            raise ValueError(f"({self.col},{self.row}) is off the board")


ORIGIN = GridCoord(0, 0)


def all_squares() -> list[GridCoord]:
    return [
        GridCoord(c, r)
        for r in range(-GRID_HALF, GRID_HALF + 1)
        for c in range(-GRID_HALF, GRID_HALF + 1)
    ]


@dataclass(frozen=True)
class GridExercise:
    id: str
    description: str
    target: frozenset[GridCoord]
    constants: Mapping[str, GridCoord] = field(default_factory=dict)
    depth_cap: int = 3

    def __post_init__(self):
        merged = dict(self.constants)
        u = merged.setdefault("u", ORIGIN)
        if u != ORIGIN:
            raise ValueError("the constant u must denote the center square")
        for name in merged:
            if len(name) != 1 or not ("a" <= name <= "z"):
                raise ValueError(f"constant names are single letters, got {name!r}")
        object.__setattr__(self, "constants", merged)
        object.__setattr__(self, "target", frozenset(self.target))
        if self.depth_cap < 1:
            raise ValueError("depth cap must be positive")


class GridCategory(enum.Enum):
    CORRECT = "correct"
    NECESSARY_NOT_SUFFICIENT = "necessary_not_sufficient"
    SUFFICIENT_NOT_NECESSARY = "sufficient_not_necessary"
    NEITHER = "neither"
    REJECTED = "rejected"


@dataclass(frozen=True)
class Rejection:
    kind: str  # parse_error | free_variable_count | constant_shadow | depth_cap_exceeded
    detail: str
    offset: int | None = None


@dataclass(frozen=True)
class Coloring:
    """green = defined and wanted, red = defined but unwanted,
    yellow = wanted but missed."""

    green: frozenset[GridCoord]
    red: frozenset[GridCoord]
    yellow: frozenset[GridCoord]


@dataclass(frozen=True)
class GridVerdict:
    category: GridCategory
    message: str
    coloring: Coloring | None = None
    rejection: Rejection | None = None


# ---------------------------------------------------------------------------
# Atom semantics
# ---------------------------------------------------------------------------

def holds_atom(pred: Pred, args: list[GridCoord] | tuple[GridCoord, ...]) -> bool:
    """Truth of one relation on concrete squares."""
    if pred is Pred.EQ:
        a, b = args
        return a == b
    if pred is Pred.RECHTS:
        a, b = args
        return b.row == a.row and b.col > a.col
    if pred is Pred.LINKS:
        a, b = args
        return b.row == a.row and b.col < a.col
    if pred is Pred.UEBER:
        a, b = args
        return b.col == a.col and b.row > a.row
    if pred is Pred.UNTER:
        a, b = args
        return b.col == a.col and b.row < a.row
    if pred is Pred.NACHBAR:
        a, b = args
        return abs(a.col - b.col) + abs(a.row - b.row) == 1
    if pred is Pred.DIST_EQ:
        a, b, x, y = args
        return (
            _aligned(a, b)
            and _aligned(x, y)
            and _dist(a, b) == _dist(x, y)
        )
    raise ValueError(f"predicate {pred.name} is not a grid relation")


def _aligned(p: GridCoord, q: GridCoord) -> bool:
    return p.row == q.row or p.col == q.col


def _dist(p: GridCoord, q: GridCoord) -> int:
    return abs(p.col - q.col) + abs(p.row - q.row)


# ---------------------------------------------------------------------------
# Vectorized evaluation
# ---------------------------------------------------------------------------

_COLS = np.repeat(np.arange(-GRID_HALF, GRID_HALF + 1), GRID_SIZE).astype(np.int16)
_ROWS = np.tile(np.arange(-GRID_HALF, GRID_HALF + 1), GRID_SIZE).astype(np.int16)
_SQUARES = [GridCoord(int(c), int(r)) for c, r in zip(_COLS, _ROWS)]


class _Axes:
    """Assigns one array axis per quantifier scope (up to _MAX_AXES)."""

    def __init__(self, count: int):
        self.count = count

    def coords(self, axis: int) -> tuple[np.ndarray, np.ndarray]:
        shape = [1] * self.count
        shape[axis] = N_SQUARES
        return _COLS.reshape(shape), _ROWS.reshape(shape)


def eval_extension(ex: GridExercise, f: Formula, free_var: str) -> set[GridCoord]:
    """The set of squares s such that f holds with free_var bound to s."""
    depth = quantifier_depth(f)
    if depth > ex.depth_cap:
        raise DepthCapExceeded(depth, ex.depth_cap)
    for name in free_symbols(f) - {free_var}:
        if name not in ex.constants:
            raise UnknownConstant(name)
    axes = _Axes(min(1 + depth, _MAX_AXES))
    const_env = {
        name: (np.int16(c.col), np.int16(c.row)) for name, c in ex.constants.items()
    }
    col0, row0 = axes.coords(0)
    env = dict(const_env)
    env[free_var] = (col0, row0)
    result = _eval(f, env, axes, next_axis=1)
    vec = np.broadcast_to(result, (N_SQUARES,) + (1,) * (axes.count - 1)).reshape(-1)
    return {_SQUARES[i] for i in np.flatnonzero(vec)}


def _eval(f: Formula, env: dict, axes: _Axes, next_axis: int):
    if isinstance(f, Atom):
        return _eval_atom(f, env)
    if isinstance(f, Not):
        return ~np.asarray(_eval(f.body, env, axes, next_axis))
    if isinstance(f, And):
        return np.asarray(_eval(f.left, env, axes, next_axis)) & np.asarray(
            _eval(f.right, env, axes, next_axis)
        )
    if isinstance(f, Or):
        return np.asarray(_eval(f.left, env, axes, next_axis)) | np.asarray(
            _eval(f.right, env, axes, next_axis)
        )
    if isinstance(f, Implies):
        return ~np.asarray(_eval(f.left, env, axes, next_axis)) | np.asarray(
            _eval(f.right, env, axes, next_axis)
        )
    if isinstance(f, Iff):
        return np.asarray(_eval(f.left, env, axes, next_axis)) == np.asarray(
            _eval(f.right, env, axes, next_axis)
        )
    assert isinstance(f, (Forall, Exists))
    universal = isinstance(f, Forall)
    if next_axis + quantifier_depth(f) - 1 < axes.count:
        col, row = axes.coords(next_axis)
        inner = {**env, f.var: (col, row)}
        body = np.asarray(_eval(f.body, inner, axes, next_axis + 1))
        if body.ndim == 0:
            return body  # no variable in the whole body: quantifier is vacuous
        if universal:
            return body.all(axis=next_axis, keepdims=True)
        return body.any(axis=next_axis, keepdims=True)
    if f.var not in free_symbols(f.body):
        return np.asarray(_eval(f.body, env, axes, next_axis))  # vacuous binder
    # Not enough axes: loop this variable over the board, short-circuiting
    # once every cell of the accumulated result is decided.
    acc = None
    for c, r in zip(_COLS, _ROWS):
        inner = {**env, f.var: (np.int16(c), np.int16(r))}
        val = np.asarray(_eval(f.body, inner, axes, next_axis))
        acc = val if acc is None else (acc & val if universal else acc | val)
        if universal:
            if not acc.any():
                break
        elif acc.all():
            break
    return acc


def _eval_atom(f: Atom, env: dict):
    coords = []
    for t in f.args:
        assert isinstance(t, Sym)
        coords.append(env[t.name])
    if f.pred is Pred.EQ:
        (ca, ra), (cb, rb) = coords
        return (ca == cb) & (ra == rb)
    if f.pred is Pred.RECHTS:
        (ca, ra), (cb, rb) = coords
        return (rb == ra) & (cb > ca)
    if f.pred is Pred.LINKS:
        (ca, ra), (cb, rb) = coords
        return (rb == ra) & (cb < ca)
    if f.pred is Pred.UEBER:
        (ca, ra), (cb, rb) = coords
        return (cb == ca) & (rb > ra)
    if f.pred is Pred.UNTER:
        (ca, ra), (cb, rb) = coords
        return (cb == ca) & (rb < ra)
    if f.pred is Pred.NACHBAR:
        (ca, ra), (cb, rb) = coords
        return (np.abs(ca - cb) + np.abs(ra - rb)) == 1
    assert f.pred is Pred.DIST_EQ
    (ca, ra), (cb, rb), (cx, rx), (cy, ry) = coords
    aligned_ab = (ra == rb) | (ca == cb)
    aligned_xy = (rx == ry) | (cx == cy)
    dist_ab = np.abs(ca - cb) + np.abs(ra - rb)
    dist_xy = np.abs(cx - cy) + np.abs(rx - ry)
    return aligned_ab & aligned_xy & (dist_ab == dist_xy)


# ---------------------------------------------------------------------------
# Checking and coloring
# ---------------------------------------------------------------------------

_MESSAGES = {
    GridCategory.CORRECT: "Correct! Your formula defines exactly the yellow set.",
    GridCategory.NECESSARY_NOT_SUFFICIENT: (
        "Your condition is necessary, but not sufficient: "
        "it covers squares outside the target, so impose further restrictions."
    ),
    GridCategory.SUFFICIENT_NOT_NECESSARY: (
        "Your condition is sufficient, but not necessary: "
        "it misses part of the target, so make it more inclusive."
    ),
    GridCategory.NEITHER: (
        "Your condition is neither sufficient nor necessary. Try again!"
    ),
}


def check_grid(ex: GridExercise, text: str) -> GridVerdict:
    """Grade a submission: parse, validate the free variable, evaluate,
    diff against the target and color the board."""
    try:
        f = parse(text, Dialect.GRID)
    except ParseError as e:
        return _rejected(Rejection("parse_error", str(e), e.offset))

    free = free_symbols(f) - set(ex.constants)
    if len(free) != 1:
        listing = ", ".join(sorted(free)) if free else "none"
        return _rejected(
            Rejection(
                "free_variable_count",
                f"the formula must have exactly one free variable; found: {listing}",
            )
        )
    shadowed = bound_variables(f) & set(ex.constants)
    if shadowed:
        return _rejected(
            Rejection(
                "constant_shadow",
                "constant letters of this exercise cannot be used as variables: "
                + ", ".join(sorted(shadowed)),
            )
        )
    free_var = next(iter(free))
    try:
        defined = eval_extension(ex, f, free_var)
    except DepthCapExceeded as e:
        return _rejected(Rejection("depth_cap_exceeded", str(e)))

    target = set(ex.target)
    coloring = Coloring(
        green=frozenset(defined & target),
        red=frozenset(defined - target),
        yellow=frozenset(target - defined),
    )
    if defined == target:
        category = GridCategory.CORRECT
    elif target < defined:
        category = GridCategory.NECESSARY_NOT_SUFFICIENT
    elif defined < target:
        category = GridCategory.SUFFICIENT_NOT_NECESSARY
    else:
        category = GridCategory.NEITHER
    return GridVerdict(category, _MESSAGES[category], coloring)


def _rejected(reason: Rejection) -> GridVerdict:
    return GridVerdict(
        GridCategory.REJECTED,
        f"Input rejected ({reason.kind}): {reason.detail} No further processing.",
        rejection=reason,
    )
