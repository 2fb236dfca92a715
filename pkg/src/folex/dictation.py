"""Grading of dictation exercises.

A submission is parsed, its free symbols are matched against the
exercise, and the prover is run in both directions against every
accepted formalization. Proving submission -> accepted makes the input
sufficient; accepted -> submission makes it necessary; both together
make it correct.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .prover import BackgroundTheory, ProverBounds, prove_implication
from .syntax import Dialect, Formula, ParseError, free_symbols, parse


@dataclass(frozen=True)
class DictationExercise:
    id: str
    prompt: str
    accepted: tuple[Formula, ...]
    required_symbols: frozenset[str]
    bounds: ProverBounds = ProverBounds()
    theory_extras: tuple[Formula, ...] = ()

    def __post_init__(self):
        if not self.accepted:
            raise ValueError("an exercise needs at least one accepted formalization")
        for a in self.accepted:
            if free_symbols(a) != self.required_symbols:
                raise ValueError(
                    f"accepted formalization of {self.id!r} does not use "
                    f"exactly the required symbols {sorted(self.required_symbols)}"
                )

    def theory(self) -> BackgroundTheory:
        return BackgroundTheory(extras=self.theory_extras)


class DictationCategory(enum.Enum):
    CORRECT = "correct"
    SUFFICIENT_NOT_NECESSARY = "sufficient_not_necessary"
    NECESSARY_NOT_SUFFICIENT = "necessary_not_sufficient"
    NEITHER = "neither"
    REJECTED = "rejected"


@dataclass(frozen=True)
class DictationRejection:
    kind: str  # parse_error | free_symbol_mismatch
    detail: str
    offset: int | None = None
    expected: frozenset[str] = field(default_factory=frozenset)
    found: frozenset[str] = field(default_factory=frozenset)


@dataclass(frozen=True)
class DictationVerdict:
    category: DictationCategory
    message: str
    rejection: DictationRejection | None = None


_MESSAGES = {
    DictationCategory.CORRECT: (
        "Correct! Congratulations, your formalization solves the problem."
    ),
    DictationCategory.SUFFICIENT_NOT_NECESSARY: (
        "Your formula is sufficient, but not necessary for the statement: "
        "it says too much, so make it more inclusive."
    ),
    DictationCategory.NECESSARY_NOT_SUFFICIENT: (
        "Your formula is necessary, but not sufficient for the statement: "
        "it says too little, so restrict it further."
    ),
    DictationCategory.NEITHER: (
        "Your formula is neither sufficient nor necessary for the statement. Try again!"
    ),
}


def check_dictation(ex: DictationExercise, text: str) -> DictationVerdict:
    """Classify a submission into the four categories, or reject it."""
    try:
        f = parse(text, Dialect.DICTATION)
    except ParseError as e:
        return DictationVerdict(
            DictationCategory.REJECTED,
            f"Input rejected (parse_error): {e} No further processing.",
            DictationRejection("parse_error", str(e), offset=e.offset),
        )

    found = free_symbols(f)
    if found != ex.required_symbols:
        expected = ex.required_symbols
        return DictationVerdict(
            DictationCategory.REJECTED,
            "Input rejected (free_symbol_mismatch): the statement is about "
            f"{sorted(expected)} but the formula uses {sorted(found)}. "
            "No further processing.",
            DictationRejection(
                "free_symbol_mismatch",
                f"expected free symbols {sorted(expected)}, found {sorted(found)}",
                expected=frozenset(expected),
                found=frozenset(found),
            ),
        )

    theory = ex.theory()
    sufficient = any(
        prove_implication(f, acc, ex.bounds, theory).proved for acc in ex.accepted
    )
    necessary = any(
        prove_implication(acc, f, ex.bounds, theory).proved for acc in ex.accepted
    )
    if sufficient and necessary:
        category = DictationCategory.CORRECT
    elif sufficient:
        category = DictationCategory.SUFFICIENT_NOT_NECESSARY
    elif necessary:
        category = DictationCategory.NECESSARY_NOT_SUFFICIENT
    else:
        category = DictationCategory.NEITHER
    return DictationVerdict(category, _MESSAGES[category])
