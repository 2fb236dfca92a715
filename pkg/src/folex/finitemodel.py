"""Finite linearly ordered models for the dictation dialect.

Used as a semantic oracle: a bounded prover may fail to prove a valid
implication, but it must never prove one that some finite order model
refutes (order and equality axioms hold in every such model).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .syntax import (
    And,
    App,
    Atom,
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


class UnassignedSymbol(Exception):
    """A symbol of the formula has no interpretation in the model."""


@dataclass(frozen=True)
class FiniteOrderModel:
    """Domain {0, ..., size-1} with the natural order.

    ``constants`` interprets individual letters, ``functions`` maps a
    function letter to its full table (table[i] is the image of i).
    Numerals k denote min(k, size-1).
    """

    size: int
    constants: Mapping[str, int] = field(default_factory=dict)
    functions: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("domain must be nonempty")
        for name, table in self.functions.items():
            if len(table) != self.size or any(not 0 <= v < self.size for v in table):
                raise ValueError(f"table for {name} is not total on the domain")
        for name, v in self.constants.items():
            if not 0 <= v < self.size:
                raise ValueError(f"constant {name} outside the domain")


def eval_in_model(
    f: Formula, m: FiniteOrderModel, assignment: Mapping[str, int] | None = None
) -> bool:
    """Tarskian truth of a dictation-dialect formula in m."""
    return _eval(f, m, dict(assignment or {}))


def _eval(f: Formula, m: FiniteOrderModel, env: dict[str, int]) -> bool:
    if isinstance(f, Atom):
        a = _eval_term(f.args[0], m, env)
        b = _eval_term(f.args[1], m, env)
        if f.pred is Pred.LT:
            return a < b
        if f.pred is Pred.LE:
            return a <= b
        if f.pred is Pred.GT:
            return a > b
        if f.pred is Pred.GE:
            return a >= b
        if f.pred is Pred.EQ:
            return a == b
        raise UnassignedSymbol(f"predicate {f.pred.name} has no order-model semantics")
    if isinstance(f, Not):
        return not _eval(f.body, m, env)
    if isinstance(f, And):
        return _eval(f.left, m, env) and _eval(f.right, m, env)
    if isinstance(f, Or):
        return _eval(f.left, m, env) or _eval(f.right, m, env)
    if isinstance(f, Implies):
        return (not _eval(f.left, m, env)) or _eval(f.right, m, env)
    if isinstance(f, Iff):
        return _eval(f.left, m, env) == _eval(f.right, m, env)
    if isinstance(f, Forall):
        return all(_eval_bound(f.body, f.var, i, m, env) for i in range(m.size))
    if isinstance(f, Exists):
        return any(_eval_bound(f.body, f.var, i, m, env) for i in range(m.size))
    raise TypeError(f"not a formula: {f!r}")


def _eval_bound(body: Formula, var: str, value: int, m: FiniteOrderModel, env: dict[str, int]) -> bool:
    old = env.get(var)
    env[var] = value
    try:
        return _eval(body, m, env)
    finally:
        if old is None:
            del env[var]
        else:
            env[var] = old


def _eval_term(t: Term, m: FiniteOrderModel, env: dict[str, int]) -> int:
    if isinstance(t, Num):
        return min(t.value, m.size - 1)
    if isinstance(t, Sym):
        if t.name in env:
            return env[t.name]
        if t.name in m.constants:
            return m.constants[t.name]
        raise UnassignedSymbol(f"no value for symbol {t.name!r}")
    if isinstance(t, App):
        if not (isinstance(t.head, Sym) and t.head.name in m.functions):
            raise UnassignedSymbol(f"no function table for {t.head!r}")
        return m.functions[t.head.name][_eval_term(t.arg, m, env)]
    raise TypeError(f"not a term: {t!r}")
