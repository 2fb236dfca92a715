"""Shared helpers: seeded random AST generators and an independent
brute-force grid evaluator used as an oracle."""

from __future__ import annotations

import random
import string

import pytest

from folex.grid import GRID_HALF, GridCoord, GridExercise
from folex.syntax import (
    And,
    App,
    Atom,
    Dialect,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Num,
    Or,
    Pred,
    Sym,
    Term,
)

DICTATION_PREDS = [Pred.LT, Pred.LE, Pred.GT, Pred.GE, Pred.EQ]
GRID_BINARY_PREDS = [Pred.RECHTS, Pred.LINKS, Pred.UEBER, Pred.UNTER, Pred.NACHBAR, Pred.EQ]


# ---------------------------------------------------------------------------
# Random ASTs (for round-trip and structural properties)
# ---------------------------------------------------------------------------

def random_dictation_term(rng: random.Random, depth: int) -> Term:
    roll = rng.random()
    if depth > 0 and roll < 0.25:
        head = random_dictation_term(rng, depth - 1)
        if isinstance(head, Num):  # numbers cannot be applied
            head = Sym(rng.choice(string.ascii_lowercase))
        return App(head, random_dictation_term(rng, depth - 1))
    if roll < 0.55:
        return Num(rng.randrange(0, 100))
    return Sym(rng.choice(string.ascii_lowercase))


def random_dictation_formula(rng: random.Random, depth: int) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        pred = rng.choice(DICTATION_PREDS)
        return Atom(pred, (random_dictation_term(rng, 2), random_dictation_term(rng, 2)))
    kind = rng.randrange(7)
    if kind == 0:
        return Not(random_dictation_formula(rng, depth - 1))
    if kind == 1:
        return Forall(rng.choice(string.ascii_lowercase), random_dictation_formula(rng, depth - 1))
    if kind == 2:
        return Exists(rng.choice(string.ascii_lowercase), random_dictation_formula(rng, depth - 1))
    ctor = [And, Or, Implies, Iff][kind - 3]
    return ctor(
        random_dictation_formula(rng, depth - 1), random_dictation_formula(rng, depth - 1)
    )


def random_grid_atom(rng: random.Random, letters: list[str]) -> Formula:
    if rng.random() < 0.2:
        return Atom(Pred.DIST_EQ, tuple(Sym(rng.choice(letters)) for _ in range(4)))
    pred = rng.choice(GRID_BINARY_PREDS)
    return Atom(pred, (Sym(rng.choice(letters)), Sym(rng.choice(letters))))


def random_grid_formula(rng: random.Random, depth: int, letters: list[str] | None = None) -> Formula:
    letters = letters or list(string.ascii_lowercase)
    if depth == 0 or rng.random() < 0.3:
        return random_grid_atom(rng, letters)
    kind = rng.randrange(7)
    if kind == 0:
        return Not(random_grid_formula(rng, depth - 1, letters))
    if kind in (1, 2):
        ctor = Forall if kind == 1 else Exists
        return ctor(rng.choice(letters), random_grid_formula(rng, depth - 1, letters))
    ctor = [And, Or, Implies, Iff][kind - 3]
    return ctor(
        random_grid_formula(rng, depth - 1, letters),
        random_grid_formula(rng, depth - 1, letters),
    )


# ---------------------------------------------------------------------------
# Random single-free-variable grid formulas (for semantic comparisons)
# ---------------------------------------------------------------------------

def random_checkable_grid_formula(
    rng: random.Random, max_quantifiers: int, constants: list[str], free_var: str
) -> Formula:
    """A grid formula whose only free letter is free_var; quantified
    variables are drawn from a disjoint pool."""
    pool = [v for v in "vwyz" if v != free_var and v not in constants]

    def go(depth: int, scope: list[str]) -> Formula:
        usable = [free_var] + constants + scope
        if depth == 0 or rng.random() < 0.35:
            return random_grid_atom(rng, usable)
        kind = rng.randrange(8)
        if kind == 0:
            return Not(go(depth - 1, scope))
        if kind in (1, 2) and len(scope) < len(pool):
            var = pool[len(scope)]
            ctor = Forall if kind == 1 else Exists
            return ctor(var, go(depth - 1, scope + [var]))
        ctor = [And, Or, Implies, Iff][kind % 4]
        return ctor(go(depth - 1, scope), go(depth - 1, scope))

    f = go(max_quantifiers + 1, [])
    # ensure the free variable actually occurs
    from folex.syntax import free_symbols

    if free_var not in free_symbols(f):
        f = And(f, Atom(Pred.EQ, (Sym(free_var), Sym(free_var))))
    return f


def random_exercise(rng: random.Random) -> GridExercise:
    n_constants = rng.randrange(0, 3)
    constants = {}
    for name in ["a", "b"][:n_constants]:
        constants[name] = GridCoord(
            rng.randrange(-GRID_HALF, GRID_HALF + 1),
            rng.randrange(-GRID_HALF, GRID_HALF + 1),
        )
    target = frozenset(
        GridCoord(rng.randrange(-GRID_HALF, GRID_HALF + 1), rng.randrange(-GRID_HALF, GRID_HALF + 1))
        for _ in range(rng.randrange(0, 60))
    )
    return GridExercise(
        id=f"random-{rng.randrange(10**6)}",
        description="random exercise",
        target=target,
        constants=constants,
    )


# ---------------------------------------------------------------------------
# Independent brute-force grid evaluator (the oracle). Works on plain
# (col, row) tuples and never touches the production evaluator.
# ---------------------------------------------------------------------------

BOARD = [(c, r) for c in range(-10, 11) for r in range(-10, 11)]


class OracleBudget(Exception):
    """Raised when an oracle run exceeds its atom-evaluation budget."""


class _Counter:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.count = 0

    def tick(self):
        self.count += 1
        if self.limit is not None and self.count > self.limit:
            raise OracleBudget()


def oracle_atom(pred: Pred, args: list[tuple[int, int]]) -> bool:
    if pred is Pred.EQ:
        return args[0] == args[1]
    (ac, ar), (bc, br) = args[0], args[1]
    if pred is Pred.RECHTS:
        return br == ar and bc > ac
    if pred is Pred.LINKS:
        return br == ar and bc < ac
    if pred is Pred.UEBER:
        return bc == ac and br > ar
    if pred is Pred.UNTER:
        return bc == ac and br < ar
    if pred is Pred.NACHBAR:
        return abs(ac - bc) + abs(ar - br) == 1
    assert pred is Pred.DIST_EQ
    (xc, xr), (yc, yr) = args[2], args[3]
    ab_aligned = ac == bc or ar == br
    xy_aligned = xc == yc or xr == yr
    d_ab = abs(ac - bc) + abs(ar - br)
    d_xy = abs(xc - yc) + abs(xr - yr)
    return ab_aligned and xy_aligned and d_ab == d_xy


def _oracle_eval(f: Formula, env: dict, counter: _Counter, short_circuit: bool) -> bool:
    if isinstance(f, Atom):
        counter.tick()
        return oracle_atom(f.pred, [env[t.name] for t in f.args])
    if isinstance(f, Not):
        return not _oracle_eval(f.body, env, counter, short_circuit)
    if isinstance(f, (And, Or, Implies, Iff)):
        a = _oracle_eval(f.left, env, counter, short_circuit)
        if short_circuit:
            if isinstance(f, And) and not a:
                return False
            if isinstance(f, Or) and a:
                return True
            if isinstance(f, Implies) and not a:
                return True
        b = _oracle_eval(f.right, env, counter, short_circuit)
        if isinstance(f, And):
            return a and b
        if isinstance(f, Or):
            return a or b
        if isinstance(f, Implies):
            return (not a) or b
        return a == b
    if isinstance(f, (Forall, Exists)):
        universal = isinstance(f, Forall)
        results = []
        for square in BOARD:
            value = _oracle_eval(f.body, {**env, f.var: square}, counter, short_circuit)
            if short_circuit:
                if universal and not value:
                    return False
                if not universal and value:
                    return True
            results.append(value)
        if short_circuit:
            return universal
        return all(results) if universal else any(results)
    raise TypeError(f"not a formula: {f!r}")


def oracle_extension(
    ex: GridExercise,
    f: Formula,
    free_var: str,
    short_circuit: bool = True,
    budget: int | None = None,
) -> set[GridCoord]:
    consts = {name: (c.col, c.row) for name, c in ex.constants.items()}
    counter = _Counter(budget)
    out = set()
    for square in BOARD:
        if _oracle_eval(f, {**consts, free_var: square}, counter, short_circuit):
            out.add(GridCoord(*square))
    return out


# ---------------------------------------------------------------------------
# Dictation-side helpers shared between prover tests and acceptance
# ---------------------------------------------------------------------------

def rename_bound(f: Formula, mapping=None, taken=None) -> Formula:
    """Systematically rename every bound variable to an unused letter."""
    if mapping is None:
        taken = set(all_letters(f))
        mapping = {}
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(_rename_term(t, mapping) for t in f.args))
    if isinstance(f, Not):
        return Not(rename_bound(f.body, mapping, taken))
    if isinstance(f, (Forall, Exists)):
        fresh = next(c for c in "zyxwvutsrqponmlkjihgfedcba" if c not in taken)
        return type(f)(
            fresh, rename_bound(f.body, {**mapping, f.var: fresh}, taken | {fresh})
        )
    return type(f)(
        rename_bound(f.left, mapping, taken), rename_bound(f.right, mapping, taken)
    )


def _rename_term(t: Term, mapping) -> Term:
    if isinstance(t, Sym):
        return Sym(mapping.get(t.name, t.name))
    if isinstance(t, App):
        return App(_rename_term(t.head, mapping), _rename_term(t.arg, mapping))
    return t


def all_letters(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        out = set()
        stack = list(f.args)
        while stack:
            t = stack.pop()
            if isinstance(t, Sym):
                out.add(t.name)
            elif isinstance(t, App):
                stack.extend([t.head, t.arg])
        return out
    if isinstance(f, Not):
        return all_letters(f.body)
    if isinstance(f, (Forall, Exists)):
        return all_letters(f.body) | {f.var}
    return all_letters(f.left) | all_letters(f.right)


def random_order_model(rng: random.Random, f: Formula):
    """A random finite order model interpreting every symbol of f."""
    from folex.finitemodel import FiniteOrderModel
    from folex.prover import function_symbols
    from folex.syntax import free_symbols

    n = rng.randrange(1, 5)
    syms = free_symbols(f)
    fns = function_symbols(f)
    return FiniteOrderModel(
        size=n,
        constants={s: rng.randrange(n) for s in syms - fns},
        functions={s: tuple(rng.randrange(n) for _ in range(n)) for s in fns},
    )


def valid_implication_pairs(rng: random.Random, count: int):
    """Implication pairs valid in every finite order model, by construction."""
    out = []
    while len(out) < count:
        f = random_dictation_formula(rng, rng.randrange(0, 3))
        g = random_dictation_formula(rng, rng.randrange(0, 3))
        kind = rng.randrange(5)
        if kind == 0:
            out.append((f, f))
        elif kind == 1:
            out.append((And(f, g), f))
        elif kind == 2:
            out.append((f, Or(f, g)))
        elif kind == 3:
            out.append((f, rename_bound(f)))
        else:
            out.append((And(f, g), And(g, f)))
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
