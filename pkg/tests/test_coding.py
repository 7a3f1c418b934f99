"""Pairing, sequence coding, and the two term/formula coding schemes."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from godelkit.coding import (
    FULL,
    MICRO,
    SCHEMES,
    CodeOverflowError,
    DecodeError,
    beta_get,
    code_bits_estimate,
    pair,
    seq_decode,
    seq_elem,
    seq_encode,
    seq_len,
    unpair,
)
from godelkit.syntax import (
    Eq,
    Num,
    Zero,
    formulas_equal,
    numeral,
    parse_formula,
    parse_term,
    terms_equal,
)

from conftest import formulas_up_to, random_formula

pf = parse_formula
pt = parse_term


# ---------------------------------------------------------------------------
# Pairing and sequences
# ---------------------------------------------------------------------------

def test_pair_known_values():
    assert pair(0, 0) == 0
    assert pair(1, 0) == 1
    assert pair(0, 1) == 2
    assert pair(3, 3) == 24
    assert unpair(24) == (3, 3)


@given(st.integers(0, 10**12), st.integers(0, 10**12))
def test_pair_unpair_round_trip(a, b):
    assert unpair(pair(a, b)) == (a, b)


@given(st.integers(0, 10**9))
def test_unpair_pair_round_trip(c):
    a, b = unpair(c)
    assert pair(a, b) == c


@given(st.lists(st.integers(0, 500), max_size=6))
@settings(deadline=None)
def test_seq_round_trip(values):
    code = seq_encode(values)
    assert seq_decode(code) == list(values)
    assert seq_len(code) == len(values)
    for i, v in enumerate(values):
        assert seq_elem(code, i) == v


def test_seq_known_value():
    assert seq_encode([15]) == 131842


def test_beta_get_matches_seq_elem():
    code = seq_encode([4, 9, 2])
    a, b = unpair(code)
    for i in range(3):
        assert beta_get(a, b, i) == seq_elem(code, i)


# ---------------------------------------------------------------------------
# Scheme codes: frozen values
# ---------------------------------------------------------------------------

def test_full_scheme_known_codes():
    assert FULL.term_code(Zero()) == 0
    assert FULL.term_code(pt("S(0)")) == 3
    assert FULL.formula_code(pf("0 = 0")) == 15
    assert FULL.formula_code(pf("0 = S(0)")) == 114
    assert FULL.formula_code(pf("v0 = v0")) == 49
    assert FULL.formula_code(pf("v0 <= v0")) == 59
    assert FULL.formula_code(pf("v0 = 0")) == 22


def test_micro_scheme_known_codes():
    assert MICRO.formula_code(pf("0 = 0")) == 3
    assert MICRO.formula_code(pf("v0 = v0")) == 25
    assert MICRO.term_code(pt("S(0)")) == 6
    assert MICRO.term_code(pt("S(S(0))")) == 321
    assert MICRO.formula_code(pf("v0 = 0")) == 7
    assert MICRO.formula_code(pf("v0 = v1")) == 250


def test_schemes_registry():
    assert SCHEMES["full"] is FULL
    assert SCHEMES["micro"] is MICRO
    assert FULL.tag("zero") == 0
    assert MICRO.key_of_tag(MICRO.tag("not")) == "not"


def test_same_formula_different_schemes():
    f = pf("0 = 0")
    assert FULL.formula_code(f) != MICRO.formula_code(f)


# ---------------------------------------------------------------------------
# Round trips
# ---------------------------------------------------------------------------

@given(st.integers(0, 10**9))
@settings(max_examples=120, deadline=None)
def test_decode_encode_round_trip(seed):
    rng = random.Random(seed)
    f = random_formula(rng, depth=rng.randrange(5), max_var=2)
    for scheme in (FULL, MICRO):
        assert formulas_equal(scheme.decode_formula(scheme.formula_code(f)), f)


def test_decode_encode_exhaustive_small():
    for f in formulas_up_to(4):
        for scheme in (FULL, MICRO):
            assert formulas_equal(scheme.decode_formula(scheme.formula_code(f)), f)


def test_num_encodes_as_binary_numeral():
    # Num(n) and the expanded doubling-form numeral share a code; decoding
    # yields the expanded tree.
    for n in (0, 1, 2, 7, 100):
        assert MICRO.term_code(Num(n)) == MICRO.term_code(numeral(n))
    decoded = MICRO.decode_formula(MICRO.formula_code(Eq(Num(2), Num(2))))
    assert formulas_equal(decoded, Eq(numeral(2), numeral(2)))


def test_codenumeral_encodes_as_its_value():
    lit = pt("#micro{0 = 0}")
    assert MICRO.term_code(lit) == MICRO.term_code(Num(3))


# ---------------------------------------------------------------------------
# Code recognizers
# ---------------------------------------------------------------------------

def test_recognizer_counts_under_20000():
    assert sum(1 for c in range(20000) if MICRO.is_formula_code(c)) == 171
    assert sum(1 for c in range(20000) if FULL.is_term_code(c)) == 398


def test_encode_lands_in_recognizer():
    for f in formulas_up_to(4, var_indices=(0,)):
        c = FULL.formula_code(f)
        assert FULL.is_formula_code(c)
        assert not FULL.is_term_code(c)


def test_decode_errors():
    with pytest.raises(DecodeError):
        MICRO.decode_formula(0)  # a term code, not a formula code
    with pytest.raises(DecodeError):
        FULL.decode_term(15)  # the code of "0 = 0"


# ---------------------------------------------------------------------------
# Feasibility guard
# ---------------------------------------------------------------------------

def test_bit_limit_overflow():
    big = pf("((0 + 0) * (0 + 0)) = ((0 + 0) * (0 + 0))")
    with pytest.raises(CodeOverflowError):
        FULL.formula_code(big, bit_limit=8)


def test_estimate_tracks_exact_bits():
    rng = random.Random(20260816)
    for _ in range(40):
        f = random_formula(rng, depth=rng.randrange(5), max_var=2)
        exact = FULL.formula_code(f).bit_length()
        est = code_bits_estimate(FULL, f)
        assert abs(est - exact) <= 2


def test_estimate_saturates_for_towers():
    from godelkit.coding import DEFAULT_BIT_LIMIT

    # Nesting doubles code size per level, so 80 levels is far past any
    # workable limit; the estimate must say so without computing the code.
    deep = pf("~ " * 80 + "0 = 0")
    assert code_bits_estimate(FULL, deep) > DEFAULT_BIT_LIMIT
