"""Conditioned independence constructions and the shape-equivalence check."""

import warnings

import pytest

from godelkit.arithmetization import extend, mk_con
from godelkit.coding import MICRO
from godelkit.constructions import (
    ConstructionWarning,
    iterate_con,
    mk_prime,
    mk_simple,
    mk_theorem1,
    mk_twin_primes,
    skeleton_equiv,
)
from godelkit.evaluator import compile_delta0
from godelkit.hierarchy import DELTA0, classify, pi, sigma
from godelkit.syntax import (
    And,
    Imp,
    Not,
    formulas_equal,
    free_vars,
    is_closed,
    parse_formula,
    subformula_at,
)

pf = parse_formula


def sieve(limit):
    flags = [False, False] + [True] * (limit - 2)
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = [False] * len(flags[p * p :: p])
    return flags


# ---------------------------------------------------------------------------
# Number-theoretic targets
# ---------------------------------------------------------------------------

def test_prime_formula_is_delta0():
    prime = mk_prime()
    assert classify(prime) == DELTA0
    assert free_vars(prime) == {0}


def test_prime_formula_agrees_with_sieve():
    fn = compile_delta0(mk_prime())
    flags = sieve(500)
    for n in range(500):
        assert fn(n) == flags[n], n


def test_twin_primes_shape(twin_primes):
    assert classify(twin_primes) == pi(2)
    assert is_closed(twin_primes)


def test_twin_primes_prefix_is_honest(twin_primes):
    # Every initial segment of the sentence's content is checkable: the
    # bounded matrix certifies actual twin pairs.
    inner = subformula_at(twin_primes, (0, 0))
    fn = compile_delta0(inner)  # free v0, v1: "v1 witnesses a twin above v0"
    assert fn(0, 3) is True  # 3, 5
    assert fn(0, 4) is False
    assert fn(10, 11) is True  # 11, 13
    assert fn(13, 17) is True  # 17, 19


# ---------------------------------------------------------------------------
# skeleton_equiv
# ---------------------------------------------------------------------------

def test_skeleton_equiv_basics():
    a, b, g = pf("0 = 0"), pf("0 <= 0"), pf("S(0) = S(0)")
    phi = Imp(a, And(b, g))
    assert skeleton_equiv(phi, g, [a, b]) is True
    assert skeleton_equiv(phi, g, []) is False
    assert skeleton_equiv(phi, phi, []) is True
    assert skeleton_equiv(a, b, []) is False


def test_skeleton_equiv_is_alpha_invariant():
    f = pf("A v0 . v0 = v0")
    g = pf("A v1 . v1 = v1")
    assert skeleton_equiv(f, g, []) is True


def test_skeleton_equiv_decomposes_connectives():
    a, b = pf("0 = 0"), pf("0 <= 0")
    assert skeleton_equiv(And(a, b), And(b, a), []) is True
    assert skeleton_equiv(Imp(a, b), Imp(Not(b), Not(a)), []) is True
    assert skeleton_equiv(Not(Not(a)), a, []) is True


def test_skeleton_equiv_uses_assumptions_not_occurring_in_either_side():
    a, b = pf("0 = 0"), pf("0 <= 0")
    # Assuming a contradiction makes everything equivalent.
    assert skeleton_equiv(a, b, [And(a, Not(a))]) is True


def test_skeleton_equiv_quantified_atoms_are_opaque():
    f = pf("A v0 . v0 = 0")
    g = pf("~ E v0 . ~ v0 = 0")
    # Interchangeable semantically, but quantified blocks are atoms here.
    assert skeleton_equiv(f, g, []) is False


def test_skeleton_equiv_atom_limit():
    atoms = [pf(f"v0 = {n}") for n in range(26)]
    left = atoms[0]
    for x in atoms[1:]:
        left = And(left, x)
    with pytest.raises(ValueError, match="atoms"):
        skeleton_equiv(left, atoms[0], [])


# ---------------------------------------------------------------------------
# The two constructions
# ---------------------------------------------------------------------------

def test_simple_construction(simple_con, twin_primes):
    assert formulas_equal(simple_con.gamma, twin_primes)
    assert formulas_equal(simple_con.phi, Imp(simple_con.alpha, And(simple_con.beta, simple_con.gamma)))
    assert simple_con.classification() == pi(2)
    assert skeleton_equiv(simple_con.phi, simple_con.gamma, [simple_con.alpha, simple_con.beta]) is True
    assert skeleton_equiv(simple_con.phi, simple_con.gamma, []) is False


def test_simple_beta_strengthens_alpha(simple_con):
    # beta is consistency of the theory extended by alpha itself.
    want = mk_con(extend(simple_con.theory, simple_con.alpha))
    assert formulas_equal(simple_con.beta, want)


def test_theorem1_construction(thm1_con, twin_primes, pa_full, rosser_full, con_pa):
    assert formulas_equal(thm1_con.psi, twin_primes)
    assert formulas_equal(thm1_con.rosser.sentence, rosser_full.sentence)
    assert formulas_equal(thm1_con.con, con_pa)
    assert formulas_equal(thm1_con.phi, Imp(thm1_con.rosser.sentence, And(thm1_con.con, thm1_con.psi)))
    assert thm1_con.classification() == pi(2)
    assert skeleton_equiv(thm1_con.phi, thm1_con.psi, [thm1_con.rosser.sentence, thm1_con.con]) is True
    assert skeleton_equiv(thm1_con.phi, thm1_con.psi, []) is False


def test_no_warning_for_healthy_target(pa_full, twin_primes):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        mk_theorem1(pa_full, twin_primes)


def test_collapse_lint_sigma1(pa_full, twin_primes):
    with pytest.warns(ConstructionWarning, match="self-defeating"):
        built = mk_theorem1(pa_full, twin_primes, annotation_overrides={(1,): DELTA0})
    assert built.classification().le(sigma(1))


def test_collapse_lint_pi1(pa_full, twin_primes):
    with pytest.warns(ConstructionWarning, match="truth value"):
        built = mk_theorem1(
            pa_full,
            twin_primes,
            annotation_overrides={(0,): DELTA0, (1, 1): DELTA0},
        )
    assert built.classification().le(pi(1))


def test_lint_message_is_self_contained(pa_full, twin_primes):
    with pytest.warns(ConstructionWarning) as caught:
        mk_theorem1(pa_full, twin_primes, annotation_overrides={(1,): DELTA0})
    text = str(caught[0].message)
    assert "independent" in text and "settles" in text
    assert "§" not in text


# ---------------------------------------------------------------------------
# Consistency towers
# ---------------------------------------------------------------------------

def test_iterate_con_zero_is_base(micro_eq0):
    assert iterate_con(micro_eq0, 0) is micro_eq0


def test_iterate_con_rejects_negative(micro_eq0):
    with pytest.raises(ValueError):
        iterate_con(micro_eq0, -1)


def test_iterate_con_grows_one_axiom_per_step(micro_eq0):
    t1 = iterate_con(micro_eq0, 1)
    t2 = iterate_con(micro_eq0, 2)
    assert len(t1.base_axioms) == 2
    assert len(t2.base_axioms) == 3
    assert t1.is_axiom(mk_con(micro_eq0))
    assert t2.is_axiom(mk_con(t1))
    assert t1.scheme is MICRO
