"""First-order formalization exercises: dictation grading by bounded
tableau proving, and definability puzzles over a 21x21 grid."""

from .dictation import (
    DictationCategory,
    DictationExercise,
    DictationVerdict,
    check_dictation,
)
from .finitemodel import FiniteOrderModel, UnassignedSymbol, eval_in_model
from .grid import (
    GridCategory,
    GridCoord,
    GridExercise,
    GridVerdict,
    check_grid,
    eval_extension,
    holds_atom,
)
from .packs import ExercisePack, builtin_packs, load_pack, save_pack, selftest
from .prover import (
    BackgroundTheory,
    ProofOutcome,
    ProverBounds,
    normalize,
    prove_implication,
)
from .syntax import (
    Dialect,
    DialectMismatch,
    Formula,
    ParseError,
    Term,
    free_symbols,
    parse,
    print_formula,
    quantifier_depth,
)

__all__ = [
    "BackgroundTheory",
    "Dialect",
    "DialectMismatch",
    "DictationCategory",
    "DictationExercise",
    "DictationVerdict",
    "ExercisePack",
    "FiniteOrderModel",
    "Formula",
    "GridCategory",
    "GridCoord",
    "GridExercise",
    "GridVerdict",
    "ParseError",
    "ProofOutcome",
    "ProverBounds",
    "Term",
    "UnassignedSymbol",
    "builtin_packs",
    "check_dictation",
    "check_grid",
    "eval_extension",
    "eval_in_model",
    "free_symbols",
    "holds_atom",
    "load_pack",
    "normalize",
    "parse",
    "print_formula",
    "prove_implication",
    "quantifier_depth",
    "save_pack",
    "selftest",
]
