"""Hilbert-style proof objects: checking, text format, codes, enumeration."""

import pytest

from godelkit.coding import FULL, MICRO
from godelkit.proofs import (
    Generalization,
    LogicalAxiom,
    ModusPonens,
    ProofError,
    TheoryAxiom,
    check_proof,
    decode_proof,
    encode_proof,
    enumerate_proofs,
    format_proof,
    match_schema,
    neg_collapse,
    parse_proof,
    proof_steps,
    schema_instance,
)
from godelkit.syntax import formulas_equal, parse_formula, parse_term, print_formula

from conftest import ONE_PLUS_ONE_PROOF as ONE_PLUS_ONE
from conftest import ONE_PLUS_ONE_TARGET as TARGET

pf = parse_formula
pt = parse_term


@pytest.fixture(scope="module")
def one_plus_one():
    return parse_proof(ONE_PLUS_ONE)


# ---------------------------------------------------------------------------
# Schemas
# ---------------------------------------------------------------------------

def test_schema_instances():
    got = schema_instance("P1", [pf("0 = 0"), pf("0 <= 0")])
    assert formulas_equal(got, pf("(0 = 0 -> (0 <= 0 -> 0 = 0))"))
    got = schema_instance("E1", [pt("S(v0)")])
    assert formulas_equal(got, pf("S(v0) = S(v0)"))
    got = schema_instance("Q1", [0, pf("v0 <= v1"), pt("S(0)")])
    assert formulas_equal(got, pf("(A v0 . v0 <= v1 -> S(0) <= v1)"))


def test_schema_arity_errors():
    with pytest.raises((ProofError, ValueError, IndexError)):
        schema_instance("E1", [])


def test_match_schema_round_trip():
    inst = schema_instance("E3", [pt("v0"), pt("S(0)"), pt("(v1 + v2)")])
    got = match_schema(inst)
    assert got is not None and got.schema == "E3"
    assert formulas_equal(schema_instance(got.schema, got.args), inst)
    assert match_schema(pf("0 = S(0)")) is None


def test_neg_collapse():
    assert print_formula(neg_collapse(pf("0 = 0"))) == "~(0 = 0)"
    assert print_formula(neg_collapse(pf("~ 0 = 0"))) == "0 = 0"
    assert print_formula(neg_collapse(pf("~ ~ 0 = 0"))) == "~(0 = 0)"


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

def test_one_plus_one_checks(pa_full, one_plus_one):
    assert check_proof(pa_full, one_plus_one) is True
    assert check_proof(pa_full, one_plus_one, conclusion=pf(TARGET)) is True
    steps = proof_steps(pa_full, one_plus_one)
    assert formulas_equal(steps[-1], pf(TARGET))


def test_wrong_conclusion_rejected(pa_full, one_plus_one):
    assert check_proof(pa_full, one_plus_one, conclusion=pf("0 = 0")) is False


def test_theory_axiom_must_be_in_theory(pa_full):
    assert check_proof(pa_full, [TheoryAxiom(pf("0 = S(0)"))]) is False
    assert check_proof(pa_full, [TheoryAxiom(pf("A v0 . (v0 + 0) = v0"))]) is True


def test_modus_ponens_shape(pa_full):
    good = [
        LogicalAxiom("E1", [pt("0")]),
        LogicalAxiom("P1", [pf("0 = 0"), pf("0 <= 0")]),
        ModusPonens(1, 0),
    ]
    assert check_proof(pa_full, good) is True
    assert check_proof(pa_full, [LogicalAxiom("E1", [pt("0")]), ModusPonens(0, 0)]) is False
    assert check_proof(pa_full, [ModusPonens(5, 0)]) is False


def test_generalization(pa_full):
    proof = [LogicalAxiom("E1", [pt("v3")]), Generalization(0, 3)]
    assert check_proof(pa_full, proof, conclusion=pf("A v3 . v3 = v3")) is True
    assert check_proof(pa_full, [Generalization(2, 0)]) is False


def test_forward_references_rejected(pa_full):
    # A step may only cite earlier steps.
    assert check_proof(pa_full, [ModusPonens(1, 0), LogicalAxiom("E1", [pt("0")])]) is False


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def test_format_parse_round_trip(one_plus_one):
    text = format_proof(one_plus_one)
    again = parse_proof(text)
    assert len(again) == len(one_plus_one)
    assert format_proof(again) == text


def test_parse_proof_errors():
    with pytest.raises(ProofError):
        parse_proof("LA Z9 {0}")
    with pytest.raises(ProofError):
        parse_proof("LA E1 {0} {0}")  # arity
    with pytest.raises(ProofError):
        parse_proof("LA E1 {0")  # unbalanced brace
    with pytest.raises(ProofError):
        parse_proof("LA Q1 w0 {v0 = 0} {0}")  # malformed variable
    with pytest.raises(ProofError):
        parse_proof("MP one two")


def test_parse_proof_nested_braces():
    # Code literals inside arguments contain braces of their own.
    proof = parse_proof("LA E1 {#micro{0 = 0}}")
    assert isinstance(proof[0], LogicalAxiom)


# ---------------------------------------------------------------------------
# Codes
# ---------------------------------------------------------------------------

def test_known_proof_code(micro_eq0):
    proof = parse_proof("LA E1 {0}")
    assert encode_proof(micro_eq0, proof, MICRO) == 562


def test_encode_decode_round_trip(pa_full, one_plus_one):
    code = encode_proof(pa_full, one_plus_one, FULL)
    back = decode_proof(pa_full, code, FULL)
    assert back is not None
    assert encode_proof(pa_full, back, FULL) == code
    got = proof_steps(pa_full, back)
    assert formulas_equal(got[-1], pf(TARGET))


def test_decode_invalid_code(micro_eq0):
    assert decode_proof(micro_eq0, 2, MICRO) is None


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def test_enumerate_finds_target_first(micro_eq0):
    r = enumerate_proofs(micro_eq0, pf("0 = 0"), 1000, MICRO)
    assert r.verdict == "target first"
    assert r.target_code == 326
    assert r.negation_code is None
    assert r.codes_scanned == 1001


def test_enumerate_neither(micro_eq0):
    r = enumerate_proofs(micro_eq0, pf("0 = S(0)"), 300, MICRO)
    assert r.verdict == "neither"
    assert r.target_code is None and r.negation_code is None
