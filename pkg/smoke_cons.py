"""Temporary smoke checks for constructions.py."""
import time
import warnings

from godelkit.arithmetization import mk_axioms_pa
from godelkit.coding import FULL, MICRO
from godelkit.constructions import (
    ConstructionWarning, iterate_con, mk_prime, mk_simple, mk_theorem1,
    mk_twin_primes, skeleton_equiv,
)
from godelkit.evaluator import compile_delta0, evaluate
from godelkit.hierarchy import DELTA0, classify, classify_annotated, pi, sigma
from godelkit.syntax import (
    And, Eq, ForAll, Imp, Not, Num, Or, Var, formulas_equal, free_vars,
    parse_formula, print_formula, subformula_at, substitute,
)

t0 = time.time()

# --- twin primes shape and class ---
twins = mk_twin_primes()
assert classify(twins) == pi(2), classify(twins)
assert free_vars(twins) == frozenset()
print("twins:", print_formula(twins)[:100], "...")
print("classify(twins) == Pi(2) ok", f"{time.time()-t0:.2f}s")

# --- prime correctness vs sieve, n < 10^4 ---
t1 = time.time()
prime = mk_prime()
assert free_vars(prime) == frozenset({0})
assert classify(prime) == DELTA0
fn = compile_delta0(prime)
assert fn is not None
N = 10_000
sieve = bytearray([1]) * N
sieve[0:2] = b"\x00\x00"
for i in range(2, int(N ** 0.5) + 1):
    if sieve[i]:
        sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
for n in range(N):
    assert fn(n) == bool(sieve[n]), n
print(f"mk_prime vs sieve n<10^4 ok ({time.time()-t1:.2f}s)")

# the prime subformula inside the twin sentence, free v1
t1 = time.time()
sub = subformula_at(twins, (0, 0, 1, 0))
assert free_vars(sub) == frozenset({1})
fn2 = compile_delta0(sub)
for n in range(N):
    assert fn2(n) == bool(sieve[n]), n
print(f"twin-prime subformula vs sieve ok ({time.time()-t1:.2f}s)")

# spot-check evaluate agrees on a few
for n in (0, 1, 2, 9, 97):
    assert evaluate(substitute(prime, 0, Num(n)), 10**6).verdict == bool(sieve[n])
print("evaluate spot checks ok")

# --- skeleton_equiv basics ---
t1 = time.time()
a = parse_formula("A v0. v0 = v0")
a2 = parse_formula("A v1. v1 = v1")  # alpha-variant of a
d = parse_formula("A v0. v0 = 0")
c = parse_formula("E v0. v0 = 0")
phi_toy = Imp(a, And(d, c))
assert skeleton_equiv(phi_toy, c, [a, d]) is True
assert skeleton_equiv(phi_toy, c, [a2, d]) is True  # assumptions up to renaming
assert skeleton_equiv(phi_toy, c, [a]) is False
assert skeleton_equiv(phi_toy, c, []) is False
assert skeleton_equiv(a, a2) is True          # atoms equal up to renaming
assert skeleton_equiv(And(a, c), And(c, a)) is True
assert skeleton_equiv(Or(a, c), Imp(Not(a), c)) is True
assert skeleton_equiv(a, d) is False
# tautologies on distinct atoms are still equivalent
assert skeleton_equiv(Imp(a, a), Imp(d, d)) is True
# assumptions entail even without appearing as subformulas
assert skeleton_equiv(c, And(c, a), [a]) is True
assert skeleton_equiv(c, And(c, a), []) is False
assert skeleton_equiv(d, c, [And(Imp(d, c), Imp(c, d))]) is True
try:
    big = parse_formula("v0 = 0")
    f25 = big
    for i in range(1, 26):
        f25 = And(f25, Eq(Var(i), Num(i)))
    skeleton_equiv(f25, big)
    raise AssertionError("expected ValueError")
except ValueError as e:
    print("atom cap:", e)
print(f"skeleton_equiv basics ok ({time.time()-t1:.2f}s)")

# --- mk_simple over full PA ---
t1 = time.time()
simple = mk_simple(twins)
built = time.time() - t1
t1 = time.time()
cls = simple.classification()
assert cls == pi(2), cls
cls_t = time.time() - t1
t1 = time.time()
assert skeleton_equiv(simple.phi, simple.gamma, [simple.alpha, simple.beta]) is True
assert skeleton_equiv(simple.phi, simple.gamma, []) is False
sk_t = time.time() - t1
print(f"mk_simple ok (build {built:.2f}s, classify {cls_t:.3f}s, skeleton {sk_t:.3f}s)")
assert formulas_equal(simple.phi, Imp(simple.alpha, And(simple.beta, simple.gamma)))

# structural class without annotation should be above Pi(2)
print("structural classify(simple.phi):", classify(simple.phi))

# --- mk_theorem1 over full PA ---
t1 = time.time()
pa = mk_axioms_pa(FULL)
th1 = mk_theorem1(pa, twins)
built = time.time() - t1
t1 = time.time()
cls = th1.classification()
assert cls == pi(2), cls
cls_t = time.time() - t1
t1 = time.time()
assert skeleton_equiv(th1.phi, th1.psi, [th1.rosser.sentence, th1.con]) is True
assert skeleton_equiv(th1.phi, th1.psi, []) is False
sk_t = time.time() - t1
print(f"mk_theorem1 ok (build {built:.2f}s, classify {cls_t:.3f}s, skeleton {sk_t:.3f}s)")
assert th1.rosser.classification() == pi(1)

# no warning on the healthy construction
with warnings.catch_warnings():
    warnings.simplefilter("error", ConstructionWarning)
    mk_theorem1(pa, twins)
print("no spurious warning ok")

# --- collapse lint ---
t1 = time.time()
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    collapsed = mk_theorem1(pa, twins, annotation_overrides={(1,): DELTA0})
msgs = [w for w in caught if issubclass(w.category, ConstructionWarning)]
assert len(msgs) == 1, [str(w.message) for w in caught]
text = str(msgs[0].message)
print("warning text:", text)
assert "independent" in text and "truth" in text
assert collapsed.classification().le(sigma(1))
# Pi(1) collapse: claim the whole consequent sits at Pi(1) via a Delta0 rho
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    collapsed2 = mk_theorem1(pa, twins, annotation_overrides={(0,): DELTA0, (1, 1): DELTA0})
msgs = [w for w in caught if issubclass(w.category, ConstructionWarning)]
assert len(msgs) == 1 and collapsed2.classification().le(pi(1))
print(f"collapse lint ok ({time.time()-t1:.2f}s)")

# --- iterate_con ---
for scheme, label in ((MICRO, "micro"), (FULL, "full")):
    t1 = time.time()
    base = mk_axioms_pa(scheme)
    for k in range(6):
        tk = iterate_con(base, k)
        c = classify(tk.axioms_formula)
        assert c.le(sigma(1)), (k, c)
    print(f"iterate_con {label} n<=5 ok ({time.time()-t1:.2f}s)")

print(f"ALL CONSTRUCTION SMOKE OK ({time.time()-t0:.2f}s)")
