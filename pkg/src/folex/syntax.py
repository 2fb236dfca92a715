"""Shared first-order AST, the two surface-syntax parsers, and a printer.

Two surface dialects share one formula shape: the *dictation* dialect
(order relations over terms with numerals and function application) and
the *grid* dialect (spatial relations between single-letter squares).
The grammar is deliberately strict: every binary connective application
must be written fully parenthesized, negation binds the smallest
following formula, and no redundant brackets are accepted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Dialect(enum.Enum):
    DICTATION = "dictation"
    GRID = "grid"


class Pred(enum.Enum):
    """Predicate symbols; the value is the canonical surface spelling."""

    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    EQ = "="
    RECHTS = "rechts"
    LINKS = "links"
    UEBER = "ueber"
    UNTER = "unter"
    NACHBAR = "nachbar"
    DIST_EQ = "dist"


DICTATION_PREDS = frozenset({Pred.LT, Pred.LE, Pred.GT, Pred.GE, Pred.EQ})
GRID_PREDS = frozenset(
    {Pred.RECHTS, Pred.LINKS, Pred.UEBER, Pred.UNTER, Pred.NACHBAR, Pred.EQ, Pred.DIST_EQ}
)

ARITY = {p: 2 for p in Pred}
ARITY[Pred.DIST_EQ] = 4

_GRID_WORDS = {
    "rechts": Pred.RECHTS,
    "links": Pred.LINKS,
    "ueber": Pred.UEBER,
    "unter": Pred.UNTER,
    "nachbar": Pred.NACHBAR,
}


def _cache_hash(cls):
    """Memoize the generated dataclass hash; AST nodes are hashed heavily
    inside the prover and recursive re-hashing dominates otherwise."""
    base = cls.__hash__

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = base(self)
            object.__setattr__(self, "_hash", h)
        return h

    cls.__hash__ = __hash__
    return cls


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

class Term:
    """Base class for terms; concrete terms are Sym, Num and App."""

    __slots__ = ()


@_cache_hash
@dataclass(frozen=True)
class Sym(Term):
    """A single small Latin letter, used for variables and constants."""

    name: str

    def __post_init__(self):
        if len(self.name) != 1 or not ("a" <= self.name <= "z"):
            raise ValueError(f"symbol must be one letter a-z, got {self.name!r}")


@_cache_hash
@dataclass(frozen=True)
class Num(Term):
    """A nonnegative integer literal."""

    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("numerals are nonnegative")


@_cache_hash
@dataclass(frozen=True)
class App(Term):
    """Application of one term to another, as in f(x) or f(x)(y)."""

    head: Term
    arg: Term

    def __post_init__(self):
        if isinstance(self.head, Num):
            raise ValueError("a number cannot be applied to an argument")


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

class Formula:
    __slots__ = ()


@_cache_hash
@dataclass(frozen=True)
class Atom(Formula):
    pred: Pred
    args: tuple[Term, ...]

    def __post_init__(self):
        if len(self.args) != ARITY[self.pred]:
            raise ValueError(f"{self.pred.name} takes {ARITY[self.pred]} arguments")


@_cache_hash
@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@_cache_hash
@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@_cache_hash
@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@_cache_hash
@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@_cache_hash
@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@_cache_hash
@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@_cache_hash
@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


BINARY_TYPES = {And: "&", Or: "v", Implies: "->", Iff: "<->"}


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class ParseError(Exception):
    """Ill-formed input. Carries the character offset of the failure and a
    description of what was expected there."""

    def __init__(self, offset: int, expected: str):
        self.offset = offset
        self.expected = expected
        super().__init__(f"at offset {offset}: expected {expected}")


class DialectMismatch(Exception):
    """A formula uses predicates or term formers outside the dialect."""


# ---------------------------------------------------------------------------
# Parser
#
# Character-level recursive descent. Whitespace is insignificant except that
# it terminates a numeral. Unicode logic symbols are accepted as aliases for
# the ASCII spellings and normalized away in the AST.
# ---------------------------------------------------------------------------

class _Cursor:
    def __init__(self, text: str, dialect: Dialect):
        self.text = text
        self.pos = 0
        self.dialect = dialect

    def error(self, expected: str, offset: int | None = None):
        raise ParseError(self.pos if offset is None else offset, expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def expect(self, ch: str, what: str):
        if self.peek() != ch:
            self.error(what)
        self.pos += 1

    def try_eat(self, s: str) -> bool:
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False


def parse(text: str, dialect: Dialect) -> Formula:
    """Parse ``text`` under the strict grammar of ``dialect``.

    Raises ParseError on any deviation from the grammar, including
    redundant brackets, unknown predicate names and trailing input.
    """
    cur = _Cursor(text, dialect)
    f = _formula(cur)
    cur.skip_ws()
    if cur.pos < len(cur.text):
        cur.error("end of input")
    return f


def _formula(cur: _Cursor) -> Formula:
    cur.skip_ws()
    ch = cur.peek()
    if ch == "":
        cur.error("a formula")
    if ch == "~" or ch == "¬":
        cur.take()
        return Not(_formula(cur))
    if ch in "AE∀∃":
        cur.take()
        kind = Forall if ch in "A∀" else Exists
        cur.skip_ws()
        v = cur.peek()
        if not ("a" <= v <= "z"):
            cur.error("a variable letter after the quantifier")
        cur.take()
        cur.skip_ws()
        cur.expect(":", "':' after the quantified variable")
        return kind(v, _formula(cur))
    if ch == "(":
        cur.take()
        left = _formula(cur)
        op = _binop(cur)
        right = _formula(cur)
        cur.skip_ws()
        cur.expect(")", "')' closing the connective")
        return op(left, right)
    return _atom(cur)


def _binop(cur: _Cursor):
    cur.skip_ws()
    start = cur.pos
    if cur.try_eat("<->") or cur.try_eat("↔"):
        return Iff
    if cur.try_eat("->") or cur.try_eat("→"):
        return Implies
    if cur.try_eat("&") or cur.try_eat("∧"):
        return And
    if cur.try_eat("v") or cur.try_eat("∨"):
        return Or
    cur.error("a binary connective (&, v, ->, <->)", start)


def _atom(cur: _Cursor) -> Formula:
    if cur.dialect is Dialect.DICTATION:
        return _dictation_atom(cur)
    return _grid_atom(cur)


# -- dictation dialect ------------------------------------------------------

def _dictation_atom(cur: _Cursor) -> Formula:
    left = _term(cur)
    pred = _relation(cur)
    right = _term(cur)
    return Atom(pred, (left, right))


def _relation(cur: _Cursor) -> Pred:
    cur.skip_ws()
    start = cur.pos
    if cur.try_eat("<=") or cur.try_eat("=<") or cur.try_eat("≤"):
        return Pred.LE
    if cur.try_eat(">=") or cur.try_eat("≥"):
        return Pred.GE
    if cur.try_eat("<"):
        return Pred.LT
    if cur.try_eat(">"):
        return Pred.GT
    if cur.try_eat("="):
        return Pred.EQ
    cur.error("a relation symbol (<, <=, >, >=, =)", start)


def _term(cur: _Cursor) -> Term:
    cur.skip_ws()
    ch = cur.peek()
    if "0" <= ch <= "9":
        start = cur.pos
        while "0" <= cur.peek() <= "9":
            cur.take()
        t: Term = Num(int(cur.text[start:cur.pos]))
    elif "a" <= ch <= "z":
        cur.take()
        t = Sym(ch)
    else:
        cur.error("a term (letter or numeral)")
    # application suffixes: f(x), f(x)(y), ...
    while True:
        mark = cur.pos
        cur.skip_ws()
        if cur.peek() != "(":
            cur.pos = mark
            return t
        if isinstance(t, Num):
            cur.error("no application: a number cannot be applied")
        cur.take()
        arg = _term(cur)
        cur.skip_ws()
        cur.expect(")", "')' closing the application")
        t = App(t, arg)


# -- grid dialect -----------------------------------------------------------

def _grid_atom(cur: _Cursor) -> Formula:
    cur.skip_ws()
    start = cur.pos
    if "0" <= cur.peek() <= "9":
        cur.error("a letter (the grid language has no numerals)")
    word = ""
    while "a" <= cur.peek() <= "z":
        word += cur.take()
    if word == "":
        cur.error("an atom", start)
    if word in _GRID_WORDS:
        a, b = _grid_arg_pair(cur)
        return Atom(_GRID_WORDS[word], (a, b))
    if word == "dist":
        a, b = _grid_arg_pair(cur)
        cur.skip_ws()
        cur.expect("=", "'=' between the two dist(...) sides")
        cur.skip_ws()
        if not cur.try_eat("dist"):
            cur.error("'dist' on the right-hand side")
        x, y = _grid_arg_pair(cur)
        return Atom(Pred.DIST_EQ, (a, b, x, y))
    if len(word) == 1:
        cur.skip_ws()
        cur.expect("=", "'=' after the left-hand square")
        return Atom(Pred.EQ, (Sym(word), _grid_letter(cur)))
    cur.error(f"a known predicate (rechts, links, ueber, unter, nachbar, dist), not {word!r}", start)


def _grid_arg_pair(cur: _Cursor) -> tuple[Term, Term]:
    cur.skip_ws()
    cur.expect("(", "'(' opening the argument list")
    a = _grid_letter(cur)
    cur.skip_ws()
    cur.expect(",", "',' between the two arguments")
    b = _grid_letter(cur)
    cur.skip_ws()
    cur.expect(")", "')' closing the argument list")
    return a, b


def _grid_letter(cur: _Cursor) -> Sym:
    cur.skip_ws()
    ch = cur.peek()
    if "0" <= ch <= "9":
        cur.error("a letter (the grid language has no numerals)")
    if not ("a" <= ch <= "z"):
        cur.error("a square letter")
    cur.take()
    return Sym(ch)


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

def print_formula(f: Formula, dialect: Dialect) -> str:
    """Emit canonical text such that parse(print_formula(f)) == f."""
    _check_dialect(f, dialect)
    return _print(f, dialect)


def _print(f: Formula, dialect: Dialect) -> str:
    if isinstance(f, Atom):
        return _print_atom(f)
    if isinstance(f, Not):
        return "~" + _print(f.body, dialect)
    if isinstance(f, Forall):
        return f"A{f.var}:" + _print(f.body, dialect)
    if isinstance(f, Exists):
        return f"E{f.var}:" + _print(f.body, dialect)
    op = BINARY_TYPES[type(f)]
    return f"({_print(f.left, dialect)}{op}{_print(f.right, dialect)})"


def _print_atom(a: Atom) -> str:
    if a.pred is Pred.DIST_EQ:
        p, q, r, s = (_print_term(t) for t in a.args)
        return f"dist({p},{q})=dist({r},{s})"
    if a.pred in _GRID_WORDS.values():
        l, r = (_print_term(t) for t in a.args)
        return f"{a.pred.value}({l},{r})"
    l, r = (_print_term(t) for t in a.args)
    return f"{l}{a.pred.value}{r}"


def _print_term(t: Term) -> str:
    if isinstance(t, Sym):
        return t.name
    if isinstance(t, Num):
        return str(t.value)
    assert isinstance(t, App)
    return f"{_print_term(t.head)}({_print_term(t.arg)})"


def _check_dialect(f: Formula, dialect: Dialect):
    allowed = DICTATION_PREDS if dialect is Dialect.DICTATION else GRID_PREDS
    for atom in atoms(f):
        if atom.pred not in allowed:
            raise DialectMismatch(f"predicate {atom.pred.name} is not in the {dialect.value} dialect")
        if dialect is Dialect.GRID:
            for t in atom.args:
                if not isinstance(t, Sym):
                    raise DialectMismatch("grid terms are single letters only")


# ---------------------------------------------------------------------------
# Structure queries
# ---------------------------------------------------------------------------

def atoms(f: Formula):
    """Yield every Atom of f, left to right."""
    if isinstance(f, Atom):
        yield f
    elif isinstance(f, Not):
        yield from atoms(f.body)
    elif isinstance(f, (Forall, Exists)):
        yield from atoms(f.body)
    else:
        yield from atoms(f.left)
        yield from atoms(f.right)


def free_symbols(f: Formula) -> frozenset[str]:
    """Letters occurring in f outside the scope of a binding quantifier.

    Heads of applications count (function letters are symbols too);
    numerals do not.
    """
    out: set[str] = set()
    _free(f, frozenset(), out)
    return frozenset(out)


def _free(f: Formula, bound: frozenset[str], out: set[str]):
    if isinstance(f, Atom):
        for t in f.args:
            _free_term(t, bound, out)
    elif isinstance(f, Not):
        _free(f.body, bound, out)
    elif isinstance(f, (Forall, Exists)):
        _free(f.body, bound | {f.var}, out)
    else:
        _free(f.left, bound, out)
        _free(f.right, bound, out)


def _free_term(t: Term, bound: frozenset[str], out: set[str]):
    if isinstance(t, Sym):
        if t.name not in bound:
            out.add(t.name)
    elif isinstance(t, App):
        _free_term(t.head, bound, out)
        _free_term(t.arg, bound, out)


def bound_variables(f: Formula) -> frozenset[str]:
    """Every letter bound by some quantifier in f."""
    if isinstance(f, Atom):
        return frozenset()
    if isinstance(f, Not):
        return bound_variables(f.body)
    if isinstance(f, (Forall, Exists)):
        return bound_variables(f.body) | {f.var}
    return bound_variables(f.left) | bound_variables(f.right)


def quantifier_depth(f: Formula) -> int:
    """Maximum number of quantifiers on any root-to-leaf path."""
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return quantifier_depth(f.body)
    if isinstance(f, (Forall, Exists)):
        return 1 + quantifier_depth(f.body)
    return max(quantifier_depth(f.left), quantifier_depth(f.right))
