"""Resource-bounded semantic tableau prover for the dictation dialect.

An implication phi -> psi is attempted by refuting {theory axioms,
normalize(phi), ~normalize(psi)}. Propositional decomposition (alpha and
beta rules) and witness introduction (delta rule) are unrestricted; each
universal-type formula may be instantiated at most ``gamma_limit`` times
per branch, so the search always terminates. The prover is sound and
deliberately incomplete: failure to close every branch within bounds is
the graded outcome NotProvedWithinBounds, never an error.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .syntax import (
    And,
    App,
    Atom,
    DialectMismatch,
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
    _cache_hash,
)


@dataclass(frozen=True)
class ProverBounds:
    gamma_limit: int = 3
    node_limit: int = 20000

    def __post_init__(self):
        if self.gamma_limit < 1 or self.node_limit < 1:
            raise ValueError("bounds must be positive")


@dataclass(frozen=True)
class BackgroundTheory:
    """Axioms of a strict total order plus equality congruence.

    The defaults make <, <=, >, >= and = interact as they do on the
    reals without committing to density or unboundedness; per-problem
    ``extras`` can add such axioms where an exercise needs them.
    """

    irreflexivity: bool = True
    transitivity: bool = True
    totality: bool = True
    equality: bool = True
    extras: tuple[Formula, ...] = ()


@dataclass(frozen=True)
class ProofOutcome:
    """Proved, or NotProvedWithinBounds with the exhaustion reason."""

    proved: bool
    closed_branches: int
    nodes: int
    reason: str | None = None  # None if proved, else "saturated" or "node_limit"


# ---------------------------------------------------------------------------
# Normalization: reduce <=, >, >= to < and =
# ---------------------------------------------------------------------------

def normalize(f: Formula) -> Formula:
    """Rewrite derived order relations so only Lt and Eq atoms remain."""
    if isinstance(f, Atom):
        if f.pred is Pred.LT or f.pred is Pred.EQ:
            return f
        a, b = f.args
        if f.pred is Pred.LE:
            return Or(Atom(Pred.LT, (a, b)), Atom(Pred.EQ, (a, b)))
        if f.pred is Pred.GT:
            return Atom(Pred.LT, (b, a))
        if f.pred is Pred.GE:
            return Or(Atom(Pred.LT, (b, a)), Atom(Pred.EQ, (b, a)))
        raise DialectMismatch(f"predicate {f.pred.name} is not in the dictation dialect")
    if isinstance(f, Not):
        return Not(normalize(f.body))
    if isinstance(f, And):
        return And(normalize(f.left), normalize(f.right))
    if isinstance(f, Or):
        return Or(normalize(f.left), normalize(f.right))
    if isinstance(f, Implies):
        return Implies(normalize(f.left), normalize(f.right))
    if isinstance(f, Iff):
        return Iff(normalize(f.left), normalize(f.right))
    if isinstance(f, Forall):
        return Forall(f.var, normalize(f.body))
    if isinstance(f, Exists):
        return Exists(f.var, normalize(f.body))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Internal fresh constants (never surface in user-visible formulas)
# ---------------------------------------------------------------------------

@_cache_hash
@dataclass(frozen=True)
class _Fresh(Term):
    index: int


# ---------------------------------------------------------------------------
# Internal de Bruijn form
#
# Inside the search, bound variables are nameless indices (distance to the
# binder), so alpha-equivalent formulas are structurally equal: a branch
# carrying Ax:phi(x) and ~Ay:phi(y) closes on the spot. Branch formulas are
# always sentences and instantiation terms are always ground, so opening a
# binder never needs index shifting.
# ---------------------------------------------------------------------------

@_cache_hash
@dataclass(frozen=True)
class _Idx(Term):
    depth: int


def _debruijn(f: Formula, env: dict[str, int], depth: int) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(_debruijn_term(t, env, depth) for t in f.args))
    if isinstance(f, Not):
        return Not(_debruijn(f.body, env, depth))
    if isinstance(f, (And, Or, Implies, Iff)):
        return type(f)(_debruijn(f.left, env, depth), _debruijn(f.right, env, depth))
    if isinstance(f, (Forall, Exists)):
        return type(f)("", _debruijn(f.body, {**env, f.var: depth}, depth + 1))
    raise TypeError(f"not a formula: {f!r}")


def _debruijn_term(t: Term, env: dict[str, int], depth: int) -> Term:
    if isinstance(t, Sym):
        if t.name in env:
            return _Idx(depth - env[t.name] - 1)
        return t
    if isinstance(t, App):
        return App(_debruijn_term(t.head, env, depth), _debruijn_term(t.arg, env, depth))
    return t


def _open(body: Formula, t: Term, level: int = 0) -> Formula:
    """Instantiate the binder ``level`` levels up with the ground term t."""
    if isinstance(body, Atom):
        return Atom(body.pred, tuple(_open_term(a, t, level) for a in body.args))
    if isinstance(body, Not):
        return Not(_open(body.body, t, level))
    if isinstance(body, (And, Or, Implies, Iff)):
        return type(body)(_open(body.left, t, level), _open(body.right, t, level))
    if isinstance(body, (Forall, Exists)):
        return type(body)("", _open(body.body, t, level + 1))
    raise TypeError(f"not a formula: {body!r}")


def _open_term(s: Term, t: Term, level: int) -> Term:
    if isinstance(s, _Idx):
        return t if s.depth == level else s
    if isinstance(s, App):
        return App(_open_term(s.head, t, level), _open_term(s.arg, t, level))
    return s


# ---------------------------------------------------------------------------
# Symbol harvesting
# ---------------------------------------------------------------------------

def function_symbols(f: Formula) -> frozenset[str]:
    """Letters appearing as application heads anywhere in f."""
    out: set[str] = set()
    _fn_syms_formula(f, out)
    return frozenset(out)


def _fn_syms_formula(f: Formula, out: set[str]):
    if isinstance(f, Atom):
        for t in f.args:
            _fn_syms_term(t, out)
    elif isinstance(f, Not):
        _fn_syms_formula(f.body, out)
    elif isinstance(f, (Forall, Exists)):
        _fn_syms_formula(f.body, out)
    else:
        _fn_syms_formula(f.left, out)
        _fn_syms_formula(f.right, out)


def _fn_syms_term(t: Term, out: set[str]):
    if isinstance(t, App):
        if isinstance(t.head, Sym):
            out.add(t.head.name)
        else:
            _fn_syms_term(t.head, out)
        _fn_syms_term(t.arg, out)


def numerals(f: Formula) -> frozenset[int]:
    out: set[int] = set()
    _numerals_formula(f, out)
    return frozenset(out)


def _numerals_formula(f: Formula, out: set[int]):
    if isinstance(f, Atom):
        for t in f.args:
            _numerals_term(t, out)
    elif isinstance(f, Not):
        _numerals_formula(f.body, out)
    elif isinstance(f, (Forall, Exists)):
        _numerals_formula(f.body, out)
    else:
        _numerals_formula(f.left, out)
        _numerals_formula(f.right, out)


def _numerals_term(t: Term, out: set[int]):
    if isinstance(t, Num):
        out.add(t.value)
    elif isinstance(t, App):
        _numerals_term(t.head, out)
        _numerals_term(t.arg, out)


# ---------------------------------------------------------------------------
# Theory axioms
# ---------------------------------------------------------------------------

def _lt(a: Term, b: Term) -> Formula:
    return Atom(Pred.LT, (a, b))


def _eq(a: Term, b: Term) -> Formula:
    return Atom(Pred.EQ, (a, b))


def theory_axioms(theory: BackgroundTheory, fn_syms: frozenset[str]) -> list[Formula]:
    a, b, c = Sym("a"), Sym("b"), Sym("c")
    out: list[Formula] = []
    if theory.irreflexivity:
        out.append(Forall("a", Not(_lt(a, a))))
    if theory.transitivity:
        out.append(
            Forall("a", Forall("b", Forall("c", Implies(And(_lt(a, b), _lt(b, c)), _lt(a, c)))))
        )
    if theory.totality:
        out.append(Forall("a", Forall("b", Or(_lt(a, b), Or(_eq(a, b), _lt(b, a))))))
    if theory.equality:
        out.append(Forall("a", _eq(a, a)))
        out.append(Forall("a", Forall("b", Implies(_eq(a, b), _eq(b, a)))))
        out.append(
            Forall("a", Forall("b", Forall("c", Implies(And(_eq(a, b), _eq(b, c)), _eq(a, c)))))
        )
        # congruence of < in either argument
        out.append(
            Forall("a", Forall("b", Forall("c", Implies(And(_eq(a, b), _lt(a, c)), _lt(b, c)))))
        )
        out.append(
            Forall("a", Forall("b", Forall("c", Implies(And(_eq(a, b), _lt(c, a)), _lt(c, b)))))
        )
        for name in sorted(fn_syms):
            fa = App(Sym(name), a)
            fb = App(Sym(name), b)
            out.append(Forall("a", Forall("b", Implies(_eq(a, b), _eq(fa, fb)))))
    return out


# ---------------------------------------------------------------------------
# Rule classification
# ---------------------------------------------------------------------------

_ALPHA, _BETA, _GAMMA, _DELTA, _LITERAL = range(5)


def _classify(f: Formula) -> int:
    if isinstance(f, And):
        return _ALPHA
    if isinstance(f, (Or, Implies, Iff)):
        return _BETA
    if isinstance(f, Forall):
        return _GAMMA
    if isinstance(f, Exists):
        return _DELTA
    if isinstance(f, Not):
        g = f.body
        if isinstance(g, (Or, Implies, Not)):
            return _ALPHA
        if isinstance(g, (And, Iff)):
            return _BETA
        if isinstance(g, Exists):
            return _GAMMA
        if isinstance(g, Forall):
            return _DELTA
    return _LITERAL


def _alpha_parts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return [f.left, f.right]
    g = f.body  # type: ignore[attr-defined]
    if isinstance(g, Or):
        return [Not(g.left), Not(g.right)]
    if isinstance(g, Implies):
        return [g.left, Not(g.right)]
    assert isinstance(g, Not)
    return [g.body]


def _beta_parts(f: Formula) -> tuple[list[Formula], list[Formula]]:
    if isinstance(f, Or):
        return [f.left], [f.right]
    if isinstance(f, Implies):
        return [Not(f.left)], [f.right]
    if isinstance(f, Iff):
        return [f.left, f.right], [Not(f.left), Not(f.right)]
    g = f.body  # type: ignore[attr-defined]
    if isinstance(g, And):
        return [Not(g.left)], [Not(g.right)]
    assert isinstance(g, Iff)
    return [g.left, Not(g.right)], [Not(g.left), g.right]


# ---------------------------------------------------------------------------
# Ground-term harvesting for gamma instantiation
#
# Every ground term occurring in an argument position is a candidate;
# bare application heads are function symbols, not candidates. Subterms
# are listed before the compounds containing them.
# ---------------------------------------------------------------------------

def _is_ground(t: Term, bound: frozenset[str]) -> bool:
    if isinstance(t, _Idx):
        return False
    if isinstance(t, Sym):
        return t.name not in bound
    if isinstance(t, App):
        return _is_ground(t.head, bound) and _is_ground(t.arg, bound)
    return True


def _terms_of(f: Formula, bound: frozenset[str], add):
    if isinstance(f, Atom):
        for t in f.args:
            _arg_occurrence(t, bound, add)
    elif isinstance(f, Not):
        _terms_of(f.body, bound, add)
    elif isinstance(f, (Forall, Exists)):
        _terms_of(f.body, bound | {f.var}, add)
    else:
        _terms_of(f.left, bound, add)
        _terms_of(f.right, bound, add)


def _arg_occurrence(t: Term, bound: frozenset[str], add):
    if isinstance(t, App):
        _arg_occurrence(t.arg, bound, add)
        _head_occurrence(t.head, bound, add)
    if _is_ground(t, bound):
        add(t)


def _head_occurrence(h: Term, bound: frozenset[str], add):
    if isinstance(h, App):
        _arg_occurrence(h.arg, bound, add)
        _head_occurrence(h.head, bound, add)


# ---------------------------------------------------------------------------
# Branch state
# ---------------------------------------------------------------------------

@dataclass
class _GammaState:
    formula: Formula
    insertion: int
    num_unsafe: bool  # binder occurs in application-head position
    used: set[Term] = field(default_factory=set)


def _binder_in_head(f: Formula, level: int = 0) -> bool:
    """Whether the binder ``level`` levels up occurs as an application head
    (instantiating it with a numeral would be ill-formed)."""
    if isinstance(f, Atom):
        return any(_binder_in_head_term(t, level) for t in f.args)
    if isinstance(f, Not):
        return _binder_in_head(f.body, level)
    if isinstance(f, (Forall, Exists)):
        return _binder_in_head(f.body, level + 1)
    return _binder_in_head(f.left, level) or _binder_in_head(f.right, level)


def _binder_in_head_term(t: Term, level: int) -> bool:
    if isinstance(t, App):
        return (
            t.head == _Idx(level)
            or _binder_in_head_term(t.head, level)
            or _binder_in_head_term(t.arg, level)
        )
    return False


class _Branch:
    __slots__ = (
        "formulas",
        "alpha",
        "beta",
        "delta",
        "gammas",
        "terms",
        "term_set",
        "closed",
        "revision",
        "scanned_at",
    )

    def __init__(self):
        self.formulas: set[Formula] = set()
        self.alpha: deque[Formula] = deque()
        self.beta: deque[Formula] = deque()
        self.delta: deque[Formula] = deque()
        self.gammas: list[_GammaState] = []
        self.terms: list[Term] = []  # first-occurrence order
        self.term_set: set[Term] = set()
        self.closed = False
        self.revision = 0  # bumped on any change that could enable a closure
        self.scanned_at = -1  # revision at the last failed closing scan

    def clone(self) -> "_Branch":
        b = _Branch()
        b.formulas = set(self.formulas)
        b.alpha = deque(self.alpha)
        b.beta = deque(self.beta)
        b.delta = deque(self.delta)
        b.gammas = [
            _GammaState(g.formula, g.insertion, g.num_unsafe, set(g.used))
            for g in self.gammas
        ]
        b.terms = list(self.terms)
        b.term_set = set(self.term_set)
        b.closed = self.closed
        b.revision = self.revision
        b.scanned_at = self.scanned_at
        return b

    def add_term(self, t: Term):
        if t not in self.term_set:
            self.term_set.add(t)
            self.terms.append(t)
            self.revision += 1

    def refutes(self, f: Formula) -> bool:
        """True if the complement of f is already on the branch."""
        if isinstance(f, Not) and f.body in self.formulas:
            return True
        return Not(f) in self.formulas

    def add(self, f: Formula):
        if f in self.formulas:
            return
        # complementary pair, or the negation of a trivial equality
        if isinstance(f, Not):
            if f.body in self.formulas:
                self.closed = True
            g = f.body
            if isinstance(g, Atom) and g.pred is Pred.EQ and g.args[0] == g.args[1]:
                self.closed = True
        if Not(f) in self.formulas:
            self.closed = True
        self.formulas.add(f)
        self.revision += 1
        _terms_of(f, frozenset(), self.add_term)
        kind = _classify(f)
        if kind == _ALPHA:
            self.alpha.append(f)
        elif kind == _BETA:
            self.beta.append(f)
        elif kind == _DELTA:
            self.delta.append(f)
        elif kind == _GAMMA:
            body = f.body.body if isinstance(f, Not) else f.body  # type: ignore[attr-defined]
            self.gammas.append(_GammaState(f, len(self.gammas), _binder_in_head(body)))

    def instantiation_candidates(self) -> list[Term]:
        # Ground terms of the branch in first-occurrence order.
        return self.terms


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

class _NodeLimit(Exception):
    pass


class _Search:
    def __init__(self, bounds: ProverBounds):
        self.bounds = bounds
        self.nodes = 0
        self.closed_branches = 0
        self.fresh_counter = 0
        self._instances: dict[tuple[Formula, Term], Formula] = {}

    def tick(self):
        self.nodes += 1
        if self.nodes > self.bounds.node_limit:
            raise _NodeLimit()

    def fresh(self) -> Term:
        self.fresh_counter += 1
        return _Fresh(self.fresh_counter)

    def run(self, initial: list[Formula]) -> bool:
        root = _Branch()
        for f in initial:
            root.add(f)
        stack = [root]
        while stack:
            branch = stack.pop()
            split = self._saturate(branch)
            if split is not None:
                left, right = split
                stack.append(right)
                stack.append(left)
                continue
            if branch.closed:
                self.closed_branches += 1
                continue
            return False  # saturated open branch: no refutation within bounds
        return True

    def _saturate(self, branch: _Branch) -> tuple[_Branch, _Branch] | None:
        """Apply rules until the branch closes, needs a split, or saturates."""
        while not branch.closed:
            if branch.alpha:
                self.tick()
                for part in _alpha_parts(branch.alpha.popleft()):
                    branch.add(part)
                continue
            if branch.delta:
                self.tick()
                f = branch.delta.popleft()
                w = self.fresh()
                branch.add_term(w)
                if isinstance(f, Exists):
                    branch.add(_open(f.body, w))
                else:  # Not(Forall)
                    g = f.body  # type: ignore[attr-defined]
                    branch.add(Not(_open(g.body, w)))
                continue
            if self._gamma_step(branch, closing_only=True):
                continue
            if branch.beta:
                split = self._beta_step(branch)
                if split is not None:
                    return split
                continue
            if self._gamma_step(branch, closing_only=False):
                continue
            return None
        return None

    def _beta_step(self, branch: _Branch) -> tuple[_Branch, _Branch] | None:
        self.tick()
        f = branch.beta.popleft()
        left_parts, right_parts = _beta_parts(f)
        # A side already present makes the formula redundant on this branch;
        # a side already refuted leaves only the other side (no split needed).
        if any(p in branch.formulas for p in left_parts) or any(
            p in branch.formulas for p in right_parts
        ):
            return None
        if any(branch.refutes(p) for p in left_parts):
            for p in right_parts:
                branch.add(p)
            return None
        if any(branch.refutes(p) for p in right_parts):
            for p in left_parts:
                branch.add(p)
            return None
        right = branch.clone()
        for p in left_parts:
            branch.add(p)
        for p in right_parts:
            right.add(p)
        return branch, right

    def _instance(self, f: Formula, t: Term) -> Formula | None:
        """The gamma instance of f at t, or None if it would be ill-formed
        (a numeral substituted into application-head position)."""
        key = (f, t)
        if key in self._instances:
            return self._instances[key]
        try:
            if isinstance(f, Forall):
                inst = _open(f.body, t)
            else:  # Not(Exists)
                g = f.body  # type: ignore[attr-defined]
                inst = Not(_open(g.body, t))
        except ValueError:
            inst = None
        self._instances[key] = inst
        return inst

    def _gamma_step(self, branch: _Branch, closing_only: bool) -> bool:
        candidates = branch.instantiation_candidates()
        if closing_only:
            # One-step lookahead: fire an instantiation whose instance
            # immediately contradicts something already on the branch.
            # Skipped when nothing changed since the last failed scan.
            if branch.scanned_at == branch.revision:
                return False
            for g in branch.gammas:
                if len(g.used) >= self.bounds.gamma_limit:
                    continue
                for t in candidates:
                    if t in g.used or (g.num_unsafe and isinstance(t, Num)):
                        continue
                    inst = self._instance(g.formula, t)
                    if inst is not None and branch.refutes(inst):
                        self.tick()
                        g.used.add(t)
                        branch.revision += 1
                        branch.add(inst)
                        return True
            branch.scanned_at = branch.revision
            return False
        best: _GammaState | None = None
        best_term: Term | None = None
        for g in branch.gammas:
            if len(g.used) >= self.bounds.gamma_limit:
                continue
            term = next(
                (
                    t
                    for t in candidates
                    if t not in g.used and not (g.num_unsafe and isinstance(t, Num))
                ),
                None,
            )
            if term is None and candidates:
                continue  # every usable candidate already tried; wait for new terms
            if best is None or (len(g.used), g.insertion) < (len(best.used), best.insertion):
                best, best_term = g, term
        if best is None:
            return False
        self.tick()
        if best_term is None:
            # no ground term exists on the branch yet: introduce one
            best_term = self.fresh()
            branch.add_term(best_term)
        best.used.add(best_term)
        branch.revision += 1
        inst = self._instance(best.formula, best_term)
        if inst is not None:
            branch.add(inst)
        return True


def prove_implication(
    phi: Formula,
    psi: Formula,
    bounds: ProverBounds | None = None,
    theory: BackgroundTheory | None = None,
) -> ProofOutcome:
    """Attempt to prove phi -> psi over the background theory.

    Free symbols of both formulas are treated as rigid constants.
    Deterministic: identical inputs always yield identical outcomes.
    """
    bounds = bounds or ProverBounds()
    theory = theory or BackgroundTheory()
    phi_n = normalize(phi)
    psi_n = normalize(psi)
    extras_n = [normalize(e) for e in theory.extras]

    fns: frozenset[str] = frozenset()
    nums: set[int] = set()
    for f in [phi_n, psi_n, *extras_n]:
        fns |= function_symbols(f)
        nums |= numerals(f)

    facts = [
        _lt(Num(k), Num(m)) for k in sorted(nums) for m in sorted(nums) if k < m
    ]
    named = [phi_n, Not(psi_n), *facts, *extras_n, *theory_axioms(theory, fns)]
    initial = [_debruijn(f, {}, 0) for f in named]

    search = _Search(bounds)
    try:
        proved = search.run(initial)
    except _NodeLimit:
        return ProofOutcome(False, search.closed_branches, search.nodes, "node_limit")
    if proved:
        return ProofOutcome(True, search.closed_branches, search.nodes)
    return ProofOutcome(False, search.closed_branches, search.nodes, "saturated")
