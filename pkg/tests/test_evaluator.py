"""Three-valued evaluation over the naturals, witness plans, compilation."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from godelkit.coding import MICRO
from godelkit.evaluator import (
    MissingWitness,
    compile_delta0,
    cutoff_eval,
    eval_term,
    eval_witnessed,
    evaluate,
)
from godelkit.syntax import (
    CodeNumeral,
    Num,
    free_vars,
    parse_formula,
    parse_term,
)

from conftest import random_formula

pf = parse_formula
pt = parse_term


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

def test_eval_term():
    assert eval_term(pt("S(S(0))")) == 2
    assert eval_term(pt("((v0 + v1) * S(v0))"), {0: 3, 1: 4}) == 28
    assert eval_term(Num(1_000_000)) == 1_000_000
    assert eval_term(CodeNumeral(pf("0 = 0"), MICRO)) == 3


def test_eval_term_unbound_variable():
    with pytest.raises(KeyError):
        eval_term(pt("v0"))


# ---------------------------------------------------------------------------
# Closed formulas
# ---------------------------------------------------------------------------

def test_atoms():
    assert evaluate(pf("0 = 0"), budget=10).verdict is True
    assert evaluate(pf("0 = S(0)"), budget=10).verdict is False
    assert evaluate(pf("0 <= S(0)"), budget=10).verdict is True
    assert evaluate(pf("S(0) <= 0"), budget=10).verdict is False


def test_connectives():
    assert evaluate(pf("(0 = 0 & ~ 0 = S(0))"), budget=10).verdict is True
    assert evaluate(pf("(0 = S(0) | 0 = 0)"), budget=10).verdict is True
    assert evaluate(pf("(0 = 0 -> 0 = S(0))"), budget=10).verdict is False


def test_bounded_quantifiers():
    assert evaluate(pf("A v0 . (v0 <= S(S(0)) -> v0 <= S(S(S(0))))"), budget=100).verdict is True
    assert evaluate(pf("E v0 . (v0 <= S(S(0)) & v0 = S(S(0)))"), budget=100).verdict is True
    assert evaluate(pf("E v0 . (v0 <= S(0) & v0 = S(S(0)))"), budget=100).verdict is False


def test_bound_above_budget():
    f = pf("A v0 . (v0 <= 1000000 -> v0 <= 1000001)")
    r = evaluate(f, budget=10)
    assert r.verdict is None
    assert r.reason == "bound-too-large"
    assert evaluate(f, budget=2_000_000).verdict is True


def test_unbounded_exists():
    assert evaluate(pf("E v0 . (v0 + v0) = 8"), budget=100).verdict is True
    # Single-variable additive equations invert exactly: the odd sum is
    # refuted outright, no budget involved.
    assert evaluate(pf("E v0 . (v0 + v0) = 9"), budget=100).verdict is False
    # A two-variable sum is past the pinning fragment; the search runs out.
    r = evaluate(pf("E v0 . E v1 . ((v0 + v0) + (v1 + v1)) = 9"), budget=100)
    assert r.verdict is None and r.reason == "budget-exhausted"


def test_unbounded_forall_never_true():
    r = evaluate(pf("A v0 . v0 <= (v0 + v0)"), budget=50)
    assert r.verdict is None and r.reason == "budget-exhausted"
    # ... but a pinned counterexample refutes immediately.
    assert evaluate(pf("A v0 . ~ v0 = 5"), budget=5).verdict is False


def test_equation_pinning_beats_budget():
    # v0 * v0 = 10^12 pins v0 = 10^6 by root extraction; the budget never
    # enters the search.
    assert evaluate(pf("E v0 . (v0 * v0) = 1000000000000"), budget=10).verdict is True
    assert evaluate(pf("E v0 . (v0 * S(v0)) = 56"), budget=3).verdict is True
    assert evaluate(pf("E v0 . (v0 = 500 & v0 <= 1000)"), budget=10).verdict is True


def test_env_argument():
    assert evaluate(pf("v0 = S(0)"), budget=10, env={0: 1}).verdict is True
    assert evaluate(pf("v0 = S(0)"), budget=10, env={0: 2}).verdict is False


# ---------------------------------------------------------------------------
# Witness plans
# ---------------------------------------------------------------------------

def test_eval_witnessed():
    f = pf("E v0 . (v0 + v0) = 1000000000000")
    assert eval_witnessed(f, {(): 500_000_000_000}, budget=10).verdict is True
    assert eval_witnessed(f, {(): 3}, budget=10).verdict is False


def test_eval_witnessed_nested_path():
    f = pf("(0 = 0 & E v0 . (v0 + v0) = 18)")
    assert eval_witnessed(f, {(1,): 9}, budget=10).verdict is True


def test_eval_witnessed_missing_path():
    f = pf("E v0 . (v0 + v0) = 18")
    with pytest.raises(MissingWitness):
        eval_witnessed(f, {}, budget=10)


# ---------------------------------------------------------------------------
# Compilation
# ---------------------------------------------------------------------------

def test_compile_outside_fragment():
    assert compile_delta0(pf("E v0 . v0 = v0")) is None
    assert compile_delta0(pf("A v0 . v0 = v0")) is None


def test_compile_closed():
    fn = compile_delta0(pf("E v0 . (v0 <= S(S(S(0))) & (v0 * v0) = 9)"))
    assert fn() is True


def test_compile_free_variables_in_index_order():
    fn = compile_delta0(pf("(v1 + v3) = 7"))
    assert fn(3, 4) is True
    assert fn(4, 4) is False


def test_compile_divisibility_shortcut():
    f = pf("E v1 . (v1 <= v0 & (v1 * S(S(0))) = v0)")
    fn = compile_delta0(f)
    assert fn(10) is True
    assert fn(11) is False


@given(st.integers(0, 10**9), st.integers(0, 6), st.integers(0, 6))
@settings(max_examples=80, deadline=None)
def test_compile_agrees_with_tree_walk(seed, a, b):
    rng = random.Random(seed)
    f = random_formula(rng, depth=3, max_var=1)
    # Depth-3 terms over arguments <= 6 keep every bound far below either
    # budget, so neither side can fall back mid-check.
    fn = compile_delta0(f)
    if fn is None:
        return
    env = {i: v for i, v in zip(sorted(free_vars(f)), (a, b))}
    walked = evaluate(f, budget=10**6, env=env)
    if walked.verdict is None:
        return
    args = [env[i] for i in sorted(env)]
    assert fn(*args) is walked.verdict


# ---------------------------------------------------------------------------
# Cutoff semantics
# ---------------------------------------------------------------------------

def test_cutoff_eval():
    assert cutoff_eval(pf("A v0 . E v1 . v0 <= v1"), cutoff=20) is True
    assert cutoff_eval(pf("A v0 . v0 <= S(v0)"), cutoff=20) is True
    # The cutoff is an approximation: a dominating witness below the cutoff
    # satisfies a sentence that is false over all of N.
    assert cutoff_eval(pf("E v0 . A v1 . v1 <= v0"), cutoff=5) is True
