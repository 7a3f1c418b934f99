"""Diagonalization: the meta function, fixed points, Rosser sentences."""

import pytest

from godelkit.coding import (
    FULL,
    MICRO,
    CodeOverflowError,
    DecodeError,
    code_bits_estimate,
)
from godelkit.fixedpoint import diag_meta, diagonalize, mk_rosser
from godelkit.hierarchy import pi
from godelkit.syntax import (
    CodeNumeral,
    ForAll,
    Imp,
    Not,
    formulas_equal,
    free_vars,
    is_closed,
    numeral,
    parse_formula,
    subformula_at,
    substitute,
)

pf = parse_formula


# ---------------------------------------------------------------------------
# diag_meta
# ---------------------------------------------------------------------------

def test_diag_meta_matches_direct_substitution():
    for scheme in (MICRO, FULL):
        for text in ("v0 = 0", "v0 = v0", "~ v0 = 0"):
            f = pf(text)
            x = scheme.formula_code(f)
            assert diag_meta(x, scheme) == scheme.formula_code(substitute(f, 0, numeral(x)))


def test_diag_meta_rejects_closed_argument():
    with pytest.raises(ValueError, match="v0"):
        diag_meta(MICRO.formula_code(pf("0 = 0")), MICRO)


def test_diag_meta_rejects_non_formula_code():
    with pytest.raises(DecodeError):
        diag_meta(2, MICRO)


def test_diag_meta_respects_bit_limit():
    x = MICRO.formula_code(pf("v0 = 0"))
    with pytest.raises(CodeOverflowError):
        diag_meta(x, MICRO, bit_limit=16)


# ---------------------------------------------------------------------------
# diagonalize
# ---------------------------------------------------------------------------

def test_fixed_point_shape():
    fp = diagonalize(pf("~ v0 = 0"), 0, MICRO)
    assert fp.scheme is MICRO
    assert isinstance(fp.eta, ForAll)
    assert isinstance(fp.eta.body, Imp)
    assert is_closed(fp.delta)
    assert free_vars(fp.eta) == {0}


def test_delta_is_the_diagonal_image():
    # delta must literally be eta with its own code plugged in for the
    # diagonalized variable; coding is injective, so this is the fixed-point
    # equation at the syntactic level.
    for scheme in (MICRO, FULL):
        fp = diagonalize(pf("~ v0 = 0"), 0, scheme)
        want = substitute(fp.eta, fp.var, CodeNumeral(fp.eta, scheme))
        assert formulas_equal(fp.delta, want)


def test_verify_on_corpus(fixedpoint_corpus):
    for fp in fixedpoint_corpus:
        assert fp.verify() is True


def test_theta_must_have_only_the_diagonal_variable_free():
    with pytest.raises(ValueError):
        diagonalize(pf("(v0 = 0 & v1 = 0)"), 0, MICRO)


def test_fixed_point_codes_are_infeasible():
    # eta embeds the whole diagonal relation, so its code is astronomically
    # large; the estimator must refuse long before any bignum work starts.
    fp = diagonalize(pf("~ v0 = 0"), 0, MICRO)
    assert code_bits_estimate(MICRO, fp.eta) >= 2**62
    with pytest.raises(CodeOverflowError):
        MICRO.formula_code(fp.eta)


# ---------------------------------------------------------------------------
# Rosser sentences
# ---------------------------------------------------------------------------

def test_rosser_full(rosser_full, pa_full):
    assert rosser_full.theory is pa_full
    assert is_closed(rosser_full.sentence)
    assert rosser_full.classification() == pi(1)
    assert rosser_full.fixed_point.verify() is True


def test_rosser_annotation_paths_resolve(rosser_full):
    for path in rosser_full.annotation:
        subformula_at(rosser_full.sentence, path)


def test_rosser_micro(rosser_micro, micro_eq0):
    assert rosser_micro.theory is micro_eq0
    assert rosser_micro.classification() == pi(1)
