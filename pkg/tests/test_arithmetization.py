"""Coded syntax relations, theories as objects, Prf/Prov/Con."""

import pytest

from godelkit.coding import FULL, MICRO, pair
from godelkit.hierarchy import DELTA0, classify, classify_annotated, sigma
from godelkit.arithmetization import (
    CON_CORE_PATH,
    decide_predicate,
    extend,
    format_theory,
    make_theory,
    mk_axioms_pa,
    mk_axioms_predicate,
    mk_con,
    mk_finite_theory,
    mk_prf,
    mk_prov,
    mk_syntax_predicates,
    numeral,
    parse_theory,
)
from godelkit.proofs import parse_proof, encode_proof
from godelkit.syntax import (
    Not,
    Var,
    Zero,
    formulas_equal,
    is_closed,
    parse_formula,
    subformula_at,
    substitute,
)

pf = parse_formula


@pytest.fixture(scope="module")
def micro_preds():
    return mk_syntax_predicates(MICRO)


# ---------------------------------------------------------------------------
# Syntax relations agree with the meta recognizers
# ---------------------------------------------------------------------------

def test_is_term_is_formula_small_sweep(micro_preds):
    is_term, is_formula = micro_preds["IsTerm"], micro_preds["IsFormula"]
    for code in range(1200):
        assert decide_predicate(is_term, (code,)) == MICRO.is_term_code(code)
        assert decide_predicate(is_formula, (code,)) == MICRO.is_formula_code(code)


def test_neg_of(micro_preds):
    neg_of = micro_preds["NegOf"]
    x = MICRO.formula_code(pf("0 = 0"))
    y = MICRO.formula_code(pf("~ 0 = 0"))
    assert decide_predicate(neg_of, (x, y)) is True
    assert decide_predicate(neg_of, (x, y + 1)) is False
    assert decide_predicate(neg_of, (MICRO.term_code(Zero()), y)) is False


def test_num_relation(micro_preds):
    num = micro_preds["Num"]
    for n in (0, 1, 2, 5, 9):
        c = MICRO.term_code(numeral(n))
        assert decide_predicate(num, (n, c)) is True
    assert decide_predicate(num, (3, MICRO.term_code(numeral(4)))) is False


def test_sub_relation(micro_preds):
    sub = micro_preds["Sub"]
    f = pf("v0 = v1")
    x = MICRO.formula_code(f)
    y = MICRO.formula_code(substitute(f, 0, numeral(9)))
    assert decide_predicate(sub, (x, 0, 9, y)) is True
    assert decide_predicate(sub, (x, 1, 9, y)) is False


def test_diag_relation(micro_preds):
    from godelkit.fixedpoint import diag_meta

    diag = micro_preds["Diag"]
    x = MICRO.formula_code(pf("v0 = 0"))
    assert decide_predicate(diag, (x, diag_meta(x, MICRO))) is True
    assert decide_predicate(diag, (x, diag_meta(x, MICRO) - 1)) is False


def test_declared_classes_and_annotations(micro_preds):
    for pred in micro_preds.values():
        # Syntactic shape is exactly the declared class; marking the
        # decidable core as an atom collapses the whole relation to Delta0.
        assert classify(pred.formula) == pred.declared_class
        assert pred.declared_class == sigma(1)
        assert classify_annotated(pred.formula, pred.annotation()) == DELTA0


# ---------------------------------------------------------------------------
# Theories
# ---------------------------------------------------------------------------

def test_finite_theory_axiom_recognition(micro_eq0):
    assert micro_eq0.is_axiom(pf("0 = 0"))
    assert not micro_eq0.is_axiom(pf("0 = S(0)"))
    assert micro_eq0.scheme is MICRO
    assert not micro_eq0.induction


def test_pa_recognizes_induction_instances(pa_full):
    from godelkit.syntax import And, ForAll, Imp, Succ

    phi = pf("v0 = v0")
    inst = Imp(
        And(substitute(phi, 0, Zero()), ForAll(0, Imp(phi, substitute(phi, 0, Succ(Var(0)))))),
        ForAll(0, phi),
    )
    assert pa_full.is_axiom(inst)
    assert not pa_full.is_axiom(pf("0 = S(0)"))
    assert len(pa_full.base_axioms) == 8
    assert pa_full.induction


def test_make_theory_without_induction():
    t = make_theory("frag", [pf("0 = 0")], induction=False, scheme=MICRO)
    assert not t.induction
    assert t.is_axiom(pf("0 = 0"))


def test_extend_adds_one_axiom(micro_eq0):
    s = pf("A v0 . v0 = v0")
    t = extend(micro_eq0, s)
    assert t.is_axiom(s)
    assert t.is_axiom(pf("0 = 0"))
    assert not micro_eq0.is_axiom(s)
    assert len(t.base_axioms) == len(micro_eq0.base_axioms) + 1


def test_format_parse_round_trip(pa_full, micro_eq0):
    for theory in (pa_full, micro_eq0):
        again = parse_theory(format_theory(theory))
        assert again.scheme is theory.scheme
        assert again.induction == theory.induction
        assert len(again.base_axioms) == len(theory.base_axioms)
        for a, b in zip(again.base_axioms, theory.base_axioms):
            assert formulas_equal(a, b)


def test_parse_theory_errors():
    with pytest.raises(ValueError, match="unknown scheme"):
        parse_theory("name: t\nscheme: nano\naxiom: 0 = 0\n")
    with pytest.raises(ValueError, match="unknown key"):
        parse_theory("flavor: vanilla\n")
    with pytest.raises(ValueError, match="induction"):
        parse_theory("name: t\ninduction: maybe\n")
    with pytest.raises(ValueError, match="expected"):
        parse_theory("name\n")
    with pytest.raises(ValueError, match="line 2"):
        parse_theory("name: t\naxiom: ((\n")
    # a missing name falls back to the default rather than failing
    assert parse_theory("scheme: micro\naxiom: 0 = 0\n").name == "theory"


def test_theory_file_comments_and_blanks():
    t = parse_theory("# header\nname: t\n\nscheme: micro\ninduction: off\naxiom: 0 = 0\n")
    assert t.name == "t"
    assert len(t.base_axioms) == 1


# ---------------------------------------------------------------------------
# Axioms predicate
# ---------------------------------------------------------------------------

def test_axioms_predicate(micro_eq0):
    ax = mk_axioms_predicate(micro_eq0)
    assert decide_predicate(ax, (MICRO.formula_code(pf("0 = 0")),)) is True
    assert decide_predicate(ax, (MICRO.formula_code(pf("0 = S(0)")),)) is False
    assert classify_annotated(ax.formula, ax.annotation()).le(sigma(1))


# ---------------------------------------------------------------------------
# Prf, Prov, Con
# ---------------------------------------------------------------------------

def test_prf_accepts_known_proof(micro_eq0):
    prf = mk_prf(micro_eq0)
    target = MICRO.formula_code(pf("0 = 0"))
    code = encode_proof(micro_eq0, parse_proof("LA E1 {0}"), MICRO)
    assert decide_predicate(prf, (code, target)) is True
    assert decide_predicate(prf, (code, MICRO.formula_code(pf("v0 = v0")))) is False
    assert decide_predicate(prf, (code + 1, target)) is False


def test_prov_carries_no_decision_witnesses(micro_eq0):
    prov = mk_prov(micro_eq0)
    assert classify_annotated(prov.formula, prov.annotation()) == sigma(1)
    with pytest.raises(ValueError, match="witness"):
        decide_predicate(prov, (MICRO.formula_code(pf("0 = 0")),))


def test_con_shape(con_pa):
    assert is_closed(con_pa)
    assert isinstance(con_pa, Not)
    # The annotated core must actually exist at the advertised path.
    subformula_at(con_pa, CON_CORE_PATH)


def test_con_tower_file_round_trip(micro_eq0):
    from godelkit.constructions import iterate_con

    tower = iterate_con(micro_eq0, 1)
    text = format_theory(tower)
    again = parse_theory(text)
    assert len(again.base_axioms) == 2
    for a, b in zip(again.base_axioms, tower.base_axioms):
        assert formulas_equal(a, b)
