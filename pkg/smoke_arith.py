"""Smoke checks for arithmetization.py against the meta-level oracles."""

import time

from godelkit.arithmetization import (
    decide_predicate, extend, format_theory, hoist_exists, make_theory,
    mk_axioms_pa, mk_axioms_predicate, mk_con, mk_finite_theory, mk_prf,
    mk_prov, mk_syntax_predicates, parse_theory, witness_exists_paths,
)
from godelkit.coding import FULL, MICRO, pair, unpair
from godelkit.proofs import check_proof, decode_proof, proof_steps
from godelkit.syntax import (
    Add, And, Eq, Exists, ForAll, Imp, Le, Mul, Not, Succ, Var, ZERO, ONE,
    numeral, parse_formula, print_formula, substitute, free_vars,
)
from godelkit.hierarchy import classify, classify_annotated, sigma, pi, DELTA0

t0 = time.time()
P = mk_syntax_predicates(MICRO)

# --- IsTerm / IsFormula sweep ---
start = time.time()
N = 2000
for n in range(N):
    want_t = MICRO.is_term_code(n)
    want_f = MICRO.is_formula_code(n)
    got_t = decide_predicate(P["IsTerm"], (n,))
    got_f = decide_predicate(P["IsFormula"], (n,))
    assert got_t == want_t, f"IsTerm({n}): got {got_t} want {want_t}"
    assert got_f == want_f, f"IsFormula({n}): got {got_f} want {want_f}"
dt = time.time() - start
print(f"IsTerm/IsFormula agree on 0..{N - 1}  ({dt:.2f}s, {dt / (2 * N) * 1e6:.0f}us/call)")

# --- NegOf sweep over unpaired arguments ---
start = time.time()
hits = 0
for m in range(3000):
    x, y = unpair(m)
    want = MICRO.is_formula_code(x) and y == pair(MICRO.tag("not"), pair(x, 0))
    got = decide_predicate(P["NegOf"], (x, y))
    assert got == want, f"NegOf({x},{y})"
    hits += want
assert hits > 0, "NegOf sweep never saw a true instance"
print(f"NegOf agrees on 3000 pairs ({hits} true) ({time.time() - start:.2f}s)")

# --- Num relation ---
for n in (0, 1, 2, 3, 7, 12, 20, 25):
    c = MICRO.term_code(numeral(n))
    assert decide_predicate(P["Num"], (n, c)) is True, f"Num({n})"
    assert decide_predicate(P["Num"], (n, c + 1)) is False
print("Num relation OK")

# --- Sub ---
f1 = parse_formula("v0 = v1")
for v, n in ((0, 3), (1, 5), (2, 4)):
    x = MICRO.formula_code(f1)
    yv = MICRO.formula_code(substitute(f1, v, numeral(n)))
    assert decide_predicate(P["Sub"], (x, v, n, yv)) is True, f"Sub v{v} n={n}"
    assert decide_predicate(P["Sub"], (x, v, n, yv + 1)) is False
f2 = parse_formula("A v0 . v0 = v1")  # stopped binder
x2 = MICRO.formula_code(f2)
y2 = MICRO.formula_code(substitute(f2, 0, numeral(9)))
assert y2 == x2
assert decide_predicate(P["Sub"], (x2, 0, 9, x2)) is True
y3 = MICRO.formula_code(substitute(f2, 1, numeral(9)))
assert decide_predicate(P["Sub"], (x2, 1, 9, y3)) is True
assert decide_predicate(P["Sub"], (MICRO.term_code(ZERO), 0, 1, 0)) is False  # term code rejected
print("Sub OK")

# --- Diag ---
for f in (parse_formula("v0 = v0"), parse_formula("v0 = 0")):
    x = MICRO.formula_code(f)
    y = MICRO.formula_code(substitute(f, 0, numeral(x)))
    assert decide_predicate(P["Diag"], (x, y)) is True, f"Diag {print_formula(f)}"
    assert decide_predicate(P["Diag"], (x, y - 1)) is False
print("Diag OK")

# --- micro theory proofs ---
T0 = mk_finite_theory("eq0", [parse_formula("0 = 0")], MICRO)
prf = mk_prf(T0)
assert decide_predicate(prf, (326, 3)) is True, "Prf(326, 3)"
assert decide_predicate(prf, (326, 4)) is False
assert decide_predicate(prf, (325, 3)) is False
start = time.time()
agree = 0
for yv in range(3000):
    p = decode_proof(T0, yv, MICRO)
    if p is not None:
        c = MICRO.formula_code(proof_steps(T0, p)[-1])
        assert decide_predicate(prf, (yv, c)) is True, f"Prf({yv},{c}) should hold"
        assert decide_predicate(prf, (yv, c + 1)) is False
        agree += 1
    else:
        assert decide_predicate(prf, (yv, 3)) is False, f"Prf({yv},3) should fail"
dt = time.time() - start
print(f"Prf sweep 0..2999: {agree} valid proofs, all agree ({dt:.2f}s, "
      f"{dt / 3000 * 1e6:.0f}us/code)")

# --- PA axioms formula (micro scheme for feasible codes) ---
PA = mk_axioms_pa(MICRO)
ax_pred = mk_axioms_predicate(PA)
for ax in PA.base_axioms:
    code = MICRO.formula_code(ax)
    assert decide_predicate(ax_pred, (code,)) is True, print_formula(ax)
theta = parse_formula("v0 = v0")
ind = Imp(And(substitute(theta, 0, ZERO),
              ForAll(0, Imp(theta, substitute(theta, 0, Succ(Var(0)))))),
          ForAll(0, theta))
assert PA.is_axiom(ind)
ind_code = MICRO.formula_code(ind)
assert decide_predicate(ax_pred, (ind_code,)) is True, "induction instance"
assert decide_predicate(ax_pred, (MICRO.formula_code(parse_formula("0 = S(0)")),)) is False
assert decide_predicate(ax_pred, (MICRO.formula_code(parse_formula("0 = 0")),)) is False
assert decide_predicate(ax_pred, (ind_code + 1,)) is False
print("PA axioms formula OK (8 base + induction accepted, non-axioms rejected)")

# --- presentation gate ---
assert PA.presentation == sigma(1)
assert classify(PA.axioms_formula) == sigma(1)
assert T0.presentation == DELTA0

# --- extension ---
sig = parse_formula("A v0 . v0 = v0")
T1 = extend(T0, sig)
assert T1.is_axiom(sig) and T1.is_axiom(parse_formula("0 = 0"))
vs, matrix = hoist_exists(T1.axioms_formula)
assert vs == ()
ax1 = mk_axioms_predicate(T1)
assert decide_predicate(ax1, (MICRO.formula_code(sig),)) is True
assert decide_predicate(ax1, (MICRO.formula_code(parse_formula("0 = 0")),)) is True
assert decide_predicate(ax1, (17,)) is False

PA1 = extend(PA, sig)
vs, matrix = hoist_exists(PA1.axioms_formula)
assert len(vs) == 2
axp1 = mk_axioms_predicate(PA1)
assert witness_exists_paths(PA1.axioms_formula) == ((0,), (0, 0))
assert decide_predicate(axp1, (MICRO.formula_code(sig),)) is True
assert decide_predicate(axp1, (ind_code,)) is True
assert decide_predicate(axp1, (MICRO.formula_code(parse_formula("0 = S(0)")),)) is False

# proving inside the extended micro theory: sig as a theory axiom step
from godelkit.proofs import TheoryAxiom, LogicalAxiom, ModusPonens
pf = (TheoryAxiom(sig),)
from godelkit.proofs import encode_proof
code_pf = encode_proof(T1, pf, MICRO)
prf1 = mk_prf(T1)
assert decide_predicate(prf1, (code_pf, MICRO.formula_code(sig))) is True
print("extend OK (witness paths shift under Or, proofs check)")

# --- theory files ---
text = format_theory(PA)
PA_back = parse_theory(text)
assert PA_back.induction and len(PA_back.base_axioms) == 8
assert PA_back.scheme is MICRO
assert PA_back.is_axiom(ind)

# --- Prov / Con shapes ---
prov = mk_prov(T0)
assert free_vars(prov.formula) == {0}
assert classify_annotated(prov.formula, prov.annotation()) == sigma(1)
con = mk_con(T0)
assert not free_vars(con)
from godelkit.arithmetization import CON_CORE_PATH
assert classify_annotated(con, {CON_CORE_PATH: DELTA0}) == pi(1)
assert classify_annotated(Not(con), {(0,) + CON_CORE_PATH: DELTA0}) == sigma(1)
print("Prov/Con classification OK")

# --- full-scheme spot checks (criterion 4 runs full scheme) ---
PF = mk_syntax_predicates(FULL)
for n in range(400):
    assert decide_predicate(PF["IsTerm"], (n,)) == FULL.is_term_code(n)
    assert decide_predicate(PF["IsFormula"], (n,)) == FULL.is_formula_code(n)
x49 = FULL.formula_code(parse_formula("v0 = v0"))
assert x49 == 49
y49 = FULL.formula_code(substitute(parse_formula("v0 = v0"), 0, numeral(49)))
assert decide_predicate(PF["Diag"], (49, y49)) is True
print("full-scheme spot checks OK")

print(f"arithmetization smoke OK ({time.time() - t0:.1f}s total)")
