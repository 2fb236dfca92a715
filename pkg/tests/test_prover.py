import itertools
import random

import pytest

from folex.finitemodel import FiniteOrderModel, UnassignedSymbol, eval_in_model
from folex.prover import (
    BackgroundTheory,
    ProverBounds,
    function_symbols,
    normalize,
    prove_implication,
)
from folex.syntax import (
    And,
    Atom,
    Dialect,
    DialectMismatch,
    Exists,
    Forall,
    Not,
    Num,
    Or,
    Pred,
    Sym,
    free_symbols,
    parse,
    print_formula,
)

from conftest import (
    random_dictation_formula,
    random_order_model,
    rename_bound,
    valid_implication_pairs,
)

D = Dialect.DICTATION


def P(s):
    return parse(s, D)


# ---------------------------------------------------------------------------
# normalize
# ---------------------------------------------------------------------------

def test_normalize_ge():
    assert normalize(P("x>=y")) == Or(
        Atom(Pred.LT, (Sym("y"), Sym("x"))), Atom(Pred.EQ, (Sym("y"), Sym("x")))
    )


def test_normalize_lt_unchanged():
    f = P("x<y")
    assert normalize(f) == f


def test_normalize_gt():
    assert normalize(P("f(x)>0")) == Atom(
        Pred.LT, (Num(0), parse("f(x)<0", D).args[0])
    )


def test_normalize_rejects_grid():
    with pytest.raises(DialectMismatch):
        normalize(parse("nachbar(u,x)", Dialect.GRID))


def test_normalize_eliminates_derived_relations(rng):
    banned = {Pred.LE, Pred.GT, Pred.GE}
    for _ in range(200):
        f = random_dictation_formula(rng, rng.randrange(0, 5))
        n = normalize(f)
        stack = [n]
        while stack:
            g = stack.pop()
            if isinstance(g, Atom):
                assert g.pred not in banned
            elif isinstance(g, Not):
                stack.append(g.body)
            elif isinstance(g, (Forall, Exists)):
                stack.append(g.body)
            elif isinstance(g, (And, Or)) or hasattr(g, "left"):
                stack.extend([g.left, g.right])


def test_normalize_semantics_preserving(rng):
    checked = 0
    for _ in range(300):
        f = random_dictation_formula(rng, rng.randrange(0, 4))
        if any(isinstance(t, (Forall, Exists)) for t in [f]):
            pass
        m = random_order_model(rng, f)
        try:
            before = eval_in_model(f, m)
            after = eval_in_model(normalize(f), m)
        except UnassignedSymbol:
            continue  # letter used both as function and individual
        assert before == after
        checked += 1
    assert checked >= 200


# ---------------------------------------------------------------------------
# eval_in_model
# ---------------------------------------------------------------------------

def test_eval_simple_assignment():
    m = FiniteOrderModel(size=3)
    assert eval_in_model(P("x<y"), m, {"x": 0, "y": 2}) is True


def test_eval_no_top_element():
    for n in (1, 2, 3, 4):
        m = FiniteOrderModel(size=n)
        assert eval_in_model(P("Ax:Ey:x<y"), m) is False


def test_eval_identity_function_is_increasing():
    m = FiniteOrderModel(size=2, functions={"f": (0, 1)})
    assert eval_in_model(P("Ax:Ay:(x<y->f(x)<f(y))"), m) is True


def test_eval_numeral_clamping():
    m = FiniteOrderModel(size=2)
    assert eval_in_model(P("1=5"), m) is True  # both clamp to 1
    m3 = FiniteOrderModel(size=3)
    assert eval_in_model(P("1=5"), m3) is False


def test_eval_unassigned_symbol():
    with pytest.raises(UnassignedSymbol):
        eval_in_model(P("x<y"), FiniteOrderModel(size=2), {"x": 0})


def test_eval_bound_variable_shadows_constant():
    m = FiniteOrderModel(size=2, constants={"x": 1})
    assert eval_in_model(P("Ex:x<1"), m) is True  # bound x ranges over all


# ---------------------------------------------------------------------------
# prove_implication: spec'd examples
# ---------------------------------------------------------------------------

INCREASING = "Ax:Ay:(x<y->f(x)<f(y))"


def test_prove_reflexive():
    f = P(INCREASING)
    assert prove_implication(f, f).proved


def test_prove_alpha_variants_both_ways():
    a, b = P(INCREASING), P("Au:Av:(u<v->f(u)<f(v))")
    assert prove_implication(a, b).proved
    assert prove_implication(b, a).proved


def test_existential_zero_vs_zero_at_origin():
    phi, psi = P("Ex:f(x)=0"), P("f(0)=0")
    # countermodel for phi -> psi: f(0)=1, f(1)=0
    m = FiniteOrderModel(size=2, functions={"f": (1, 0)})
    assert eval_in_model(phi, m) is True
    assert eval_in_model(psi, m) is False
    out = prove_implication(phi, psi)
    assert not out.proved
    assert out.reason in ("saturated", "node_limit")
    assert prove_implication(psi, phi).proved


def test_inconsistent_antecedent_proves_anything_relevant():
    phi, psi = P("Ax:Ay:f(x)<f(y)"), P(INCREASING)
    assert prove_implication(phi, psi).proved
    # and the converse fails: the identity function separates them
    m = FiniteOrderModel(size=2, functions={"f": (0, 1)})
    assert eval_in_model(psi, m) is True
    assert eval_in_model(phi, m) is False
    assert not prove_implication(psi, phi).proved


def test_relation_interplay_via_theory():
    assert prove_implication(P("x>=y"), P("(y<x v y=x)")).proved
    assert prove_implication(P("(y<x v y=x)"), P("x>=y")).proved
    assert prove_implication(P("x<=y"), P("~y<x")).proved
    assert prove_implication(P("~y<x"), P("x<=y")).proved
    assert prove_implication(P("x=y"), P("y=x")).proved
    assert prove_implication(P("(x<y&y<z)"), P("x<z")).proved


def test_congruence_through_functions():
    assert prove_implication(P("x=y"), P("f(x)=f(y)")).proved


def test_numeral_order_facts():
    assert prove_implication(P("x<0"), P("x<1")).proved
    assert not prove_implication(P("x<1"), P("x<0")).proved


def test_proof_outcome_reports_statistics():
    out = prove_implication(P("Ex:f(x)=0"), P("f(0)=0"))
    assert out.nodes > 0
    out2 = prove_implication(P(INCREASING), P(INCREASING))
    assert out2.proved and out2.reason is None


def test_node_limit_reason():
    out = prove_implication(
        P("Ex:f(x)=0"), P("f(0)=0"), ProverBounds(gamma_limit=3, node_limit=10)
    )
    assert not out.proved
    assert out.reason == "node_limit"


# ---------------------------------------------------------------------------
# Properties
# ---------------------------------------------------------------------------

def test_alpha_invariance_random(rng):
    for _ in range(40):
        f = random_dictation_formula(rng, rng.randrange(1, 4))
        g = rename_bound(f)
        assert prove_implication(f, g).proved
        assert prove_implication(g, f).proved


def test_determinism():
    pairs = [
        (P("Ex:f(x)=0"), P("f(0)=0")),
        (P(INCREASING), P("Au:Av:(u<v->f(u)<f(v))")),
        (P("x<=y"), P("~y<x")),
    ]
    for a, b in pairs:
        assert prove_implication(a, b) == prove_implication(a, b)


def test_monotone_bounds():
    cases = [
        (P("x<=y"), P("~y<x")),
        (P("f(0)=0"), P("Ex:f(x)=0")),
        (P("(x<y&y<z)"), P("x<z")),
        (P("x=y"), P("f(x)=f(y)")),
    ]
    big = 200000
    for a, b in cases:
        assert prove_implication(a, b, ProverBounds(3, big)).proved
        for g in (4, 5, 6):
            assert prove_implication(a, b, ProverBounds(g, big)).proved, (
                f"lost a proof when raising gamma to {g}"
            )


def test_soundness_sampled(rng):
    proved = []
    for a, b in valid_implication_pairs(rng, 150):
        if prove_implication(a, b).proved:
            proved.append((a, b))
    assert len(proved) >= 100
    for a, b in proved:
        for _ in range(20):
            m = random_order_model(rng, And(a, b))
            try:
                if eval_in_model(a, m) and not eval_in_model(b, m):
                    pytest.fail(
                        f"countermodel for proved implication "
                        f"{print_formula(a, D)} -> {print_formula(b, D)}"
                    )
            except UnassignedSymbol:
                continue


def test_background_theory_flags():
    no_total = BackgroundTheory(totality=False)
    assert not prove_implication(P("~y<x"), P("x<=y"), theory=no_total).proved
    assert prove_implication(P("~y<x"), P("x<=y")).proved


def test_theory_extras_injectable():
    density = P("Ax:Ay:(x<y->Ez:(x<z&z<y))")
    with_density = BackgroundTheory(extras=(density,))
    goal = P("(x<y->Ez:(x<z&z<y))")
    assert prove_implication(P("x=x"), goal, theory=with_density).proved
    assert not prove_implication(P("x=x"), goal).proved
