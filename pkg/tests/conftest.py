"""Shared fixtures and formula generators.

The expensive objects (PA over the full scheme, Rosser sentences, the two
conditioning constructions) are built once per session; individual tests
treat them as immutable.
"""

import itertools
import random

import pytest

from godelkit.arithmetization import mk_axioms_pa, mk_finite_theory, mk_con
from godelkit.coding import FULL, MICRO
from godelkit.constructions import mk_simple, mk_theorem1, mk_twin_primes
from godelkit.fixedpoint import diagonalize, mk_rosser
from godelkit.syntax import (
    Add,
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    Imp,
    Le,
    Mul,
    Not,
    Or,
    Succ,
    Term,
    Var,
    Zero,
    parse_formula,
)


# ---------------------------------------------------------------------------
# Random generation (seeded, deterministic across runs)
# ---------------------------------------------------------------------------

def random_term(rng: random.Random, depth: int, max_var: int = 2) -> Term:
    if depth <= 0:
        return rng.choice([Zero(), Var(rng.randrange(max_var + 1))])
    k = rng.randrange(5)
    if k == 0:
        return Zero()
    if k == 1:
        return Var(rng.randrange(max_var + 1))
    if k == 2:
        return Succ(random_term(rng, depth - 1, max_var))
    cls = Add if k == 3 else Mul
    return cls(random_term(rng, depth - 1, max_var), random_term(rng, depth - 1, max_var))


def random_formula(rng: random.Random, depth: int, max_var: int = 2) -> Formula:
    if depth <= 0:
        cls = Eq if rng.random() < 0.5 else Le
        return cls(random_term(rng, 0, max_var), random_term(rng, 0, max_var))
    k = rng.randrange(8)
    if k <= 1:
        cls = Eq if k == 0 else Le
        return cls(random_term(rng, depth - 1, max_var), random_term(rng, depth - 1, max_var))
    if k == 2:
        return Not(random_formula(rng, depth - 1, max_var))
    if k <= 5:
        cls = (And, Or, Imp)[k - 3]
        return cls(random_formula(rng, depth - 1, max_var), random_formula(rng, depth - 1, max_var))
    cls = ForAll if k == 6 else Exists
    return cls(rng.randrange(max_var + 1), random_formula(rng, depth - 1, max_var))


# ---------------------------------------------------------------------------
# Exhaustive enumeration by node count
# ---------------------------------------------------------------------------

def terms_of_size(n: int, var_indices=(0, 1)):
    """All terms with exactly n AST nodes over the given variable indices."""
    if n <= 0:
        return
    if n == 1:
        yield Zero()
        for i in var_indices:
            yield Var(i)
        return
    for sub in terms_of_size(n - 1, var_indices):
        yield Succ(sub)
    for k in range(1, n - 1):
        for left in terms_of_size(k, var_indices):
            for right in terms_of_size(n - 1 - k, var_indices):
                yield Add(left, right)
                yield Mul(left, right)


def formulas_of_size(n: int, var_indices=(0, 1)):
    """All formulas with exactly n AST nodes over the given variable indices."""
    if n < 3:
        return
    for k in range(1, n - 1):
        for left in terms_of_size(k, var_indices):
            for right in terms_of_size(n - 1 - k, var_indices):
                yield Eq(left, right)
                yield Le(left, right)
    for sub in formulas_of_size(n - 1, var_indices):
        yield Not(sub)
        for i in var_indices:
            yield ForAll(i, sub)
            yield Exists(i, sub)
    for k in range(3, n - 3):
        for left in formulas_of_size(k, var_indices):
            for right in formulas_of_size(n - 1 - k, var_indices):
                yield And(left, right)
                yield Or(left, right)
                yield Imp(left, right)


def formulas_up_to(n: int, var_indices=(0, 1)):
    return itertools.chain.from_iterable(
        formulas_of_size(k, var_indices) for k in range(3, n + 1)
    )


# ---------------------------------------------------------------------------
# A worked proof: 1 + 1 = 2 from the recursion equations for addition
# ---------------------------------------------------------------------------

ONE_PLUS_ONE_PROOF = """
TA {A v0 . A v1 . (v0 + S(v1)) = S((v0 + v1))}
LA Q1 v0 {A v1 . (v0 + S(v1)) = S((v0 + v1))} {S(0)}
MP 1 0
LA Q1 v1 {(S(0) + S(v1)) = S((S(0) + v1))} {0}
MP 3 2
TA {A v0 . (v0 + 0) = v0}
LA Q1 v0 {(v0 + 0) = v0} {S(0)}
MP 6 5
LA E4 {(S(0) + 0)} {S(0)}
MP 8 7
LA E3 {(S(0) + S(0))} {S((S(0) + 0))} {S(S(0))}
MP 10 4
MP 11 9
"""

ONE_PLUS_ONE_TARGET = "(S(0) + S(0)) = S(S(0))"


# ---------------------------------------------------------------------------
# Session fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="session")
def pa_full():
    return mk_axioms_pa(FULL)


@pytest.fixture(scope="session")
def micro_eq0():
    return mk_finite_theory("eq0", [parse_formula("0 = 0")], MICRO)


@pytest.fixture(scope="session")
def con_pa(pa_full):
    return mk_con(pa_full)


@pytest.fixture(scope="session")
def twin_primes():
    return mk_twin_primes()


@pytest.fixture(scope="session")
def rosser_full(pa_full):
    return mk_rosser(pa_full)


@pytest.fixture(scope="session")
def rosser_micro(micro_eq0):
    return mk_rosser(micro_eq0)


@pytest.fixture(scope="session")
def simple_con(twin_primes):
    return mk_simple(twin_primes)


@pytest.fixture(scope="session")
def thm1_con(pa_full, twin_primes):
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        return mk_theorem1(pa_full, twin_primes)


@pytest.fixture(scope="session")
def fixedpoint_corpus(rosser_full, rosser_micro):
    """Diagonal fixed points covering both schemes and assorted carriers."""
    corpus = [
        diagonalize(parse_formula("~ v0 = 0"), 0, MICRO),
        diagonalize(parse_formula("v0 = v0"), 0, MICRO),
        diagonalize(parse_formula("A v1 . ~ (v0 + v1) = 0"), 0, MICRO),
        diagonalize(parse_formula("~ v0 = 0"), 0, FULL),
        diagonalize(parse_formula("E v1 . (v0 = (v1 + v1) | v0 = S((v1 + v1)))"), 0, FULL),
        rosser_full.fixed_point,
        rosser_micro.fixed_point,
    ]
    return corpus
