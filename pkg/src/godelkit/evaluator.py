"""Budgeted evaluation of arithmetic formulas over the standard naturals.

evaluate() returns a three-valued EvalResult.  The ground rules:

* Bounded quantifiers (BoundedShape) are decided exactly when possible:
  by constraint pinning at any bound size, or by iteration when the bound
  fits the budget.  Otherwise Unknown("bound-too-large").
* Unbounded exists searches 0..budget after pinning; exhausted search is
  Unknown("budget-exhausted").
* Unbounded forall never returns True: a counterexample gives False,
  anything else is Unknown("budget-exhausted").

The pinning step exploits that every term of this language is nondecreasing
in each variable (there is no subtraction), so each atom of a conjunction
that mentions the quantified variable on one side confines it to an
interval computable by exact inversion of +, *, S layers (with isqrt for
the self-product shapes x*x and x*S(x)).  Intersecting the intervals either
refutes the quantifier outright or leaves a candidate set small enough to
enumerate, which is how atoms with astronomically large bounds (beta-function
access, Cantor-pair brackets) stay decidable.  Pinning only ever replaces an
Unknown with a sound True/False; iteration results are unchanged.

eval_witnessed() evaluates with a witness plan: a map from the tree paths of
*unbounded existential* nodes to the value to plug in.  A visited unbounded
exists without a plan entry raises MissingWitness; a wrong witness just makes
the formula false there (no search happens).  Bounded quantifiers ignore the
plan.  Paths use child indices (Not and quantifiers: 0; binary: 0 and 1).

cutoff_eval() is a separate, deliberately naive semantics: every quantifier
ranges over 0..cutoff with exact arithmetic.  It exists as an oracle for
transformations that preserve truth under relativized quantifiers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .syntax import (
    Add,
    And,
    BoundedShape,
    CodeNumeral,
    Eq,
    Exists,
    ForAll,
    Formula,
    Imp,
    Le,
    Mul,
    Not,
    Num,
    Or,
    Succ,
    Term,
    Var,
    Zero,
    free_vars,
    match_bounded,
    term_has_var,
)

BUDGET_EXHAUSTED = "budget-exhausted"
BOUND_TOO_LARGE = "bound-too-large"

# Pinned candidate sets larger than this are not enumerated.
PIN_CAP = 4096


class MissingWitness(KeyError):
    """A witnessed evaluation visited an unplanned unbounded exists."""

    def __init__(self, path: tuple[int, ...]):
        self.path = path
        super().__init__(f"no witness for the exists at path {path}")


@dataclass(frozen=True)
class EvalResult:
    verdict: Optional[bool]
    reason: Optional[str] = None  # set iff verdict is None

    def __str__(self) -> str:
        if self.verdict is None:
            return f"Unknown({self.reason})"
        return "True" if self.verdict else "False"


TRUE = EvalResult(True)
FALSE = EvalResult(False)
UNKNOWN_BUDGET = EvalResult(None, BUDGET_EXHAUSTED)
UNKNOWN_BOUND = EvalResult(None, BOUND_TOO_LARGE)

Env = dict[int, int]
Plan = Mapping[tuple[int, ...], int]

_ISQRT_CACHE: dict[int, int] = {}
_ISQRT_CACHE_MIN_BITS = 4096


def _isqrt(n: int) -> int:
    """math.isqrt, memoized for the huge values that pins revisit."""
    if n.bit_length() < _ISQRT_CACHE_MIN_BITS:
        return math.isqrt(n)
    got = _ISQRT_CACHE.get(n)
    if got is None:
        got = math.isqrt(n)
        if len(_ISQRT_CACHE) >= 64:
            _ISQRT_CACHE.pop(next(iter(_ISQRT_CACHE)))
        _ISQRT_CACHE[n] = got
    return got


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

def eval_term(t: Term, env: Optional[Mapping[int, int]] = None) -> int:
    env = env or {}
    done: dict[int, int] = {}
    stack: list[tuple[Term, bool]] = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in done:
            continue
        if isinstance(node, Zero):
            done[id(node)] = 0
        elif isinstance(node, Var):
            done[id(node)] = env[node.index]
        elif isinstance(node, Num):
            done[id(node)] = node.value
        elif isinstance(node, CodeNumeral):
            done[id(node)] = node.scheme.formula_code(node.formula)
        elif not expanded:
            stack.append((node, True))
            if isinstance(node, Succ):
                stack.append((node.arg, False))
            else:
                stack.append((node.left, False))
                stack.append((node.right, False))
        elif isinstance(node, Succ):
            done[id(node)] = done[id(node.arg)] + 1
        elif isinstance(node, Add):
            done[id(node)] = done[id(node.left)] + done[id(node.right)]
        else:
            done[id(node)] = done[id(node.left)] * done[id(node.right)]
    return done[id(t)]


# ---------------------------------------------------------------------------
# Interval pinning
# ---------------------------------------------------------------------------

# Solution sets are (lo, hi) with hi None for unbounded; (1, 0) is empty;
# None means the atom gave no information.
_Interval = Optional[tuple[int, Optional[int]]]
_EMPTY: tuple[int, Optional[int]] = (1, 0)
_ALL: tuple[int, Optional[int]] = (0, None)


def _flatten_and(f: Formula) -> list[Formula]:
    out: list[Formula] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack.append(g.right)
            stack.append(g.left)
        else:
            out.append(g)
    return out


def _self_product(t: Term, var: int) -> Optional[tuple[Term, int]]:
    """Match t as X*X (degree marker 0) or X*S(X) / S(X)*X (marker 1)."""
    if not isinstance(t, Mul):
        return None
    a, b = t.left, t.right
    if a == b:
        return a, 0
    if isinstance(b, Succ) and b.arg == a:
        return a, 1
    if isinstance(a, Succ) and a.arg == b:
        return b, 1
    return None


def _solve_eq(t: Term, var: int, c: int, env: Env) -> _Interval:
    """Exact solution interval of t(var=w) == c, or None if unsupported."""
    if not term_has_var(t, var):
        return _ALL if eval_term(t, env) == c else _EMPTY
    if isinstance(t, Var):
        return (c, c)
    if isinstance(t, Succ):
        return _EMPTY if c == 0 else _solve_eq(t.arg, var, c - 1, env)
    if isinstance(t, (Add, Mul)):
        in_left = term_has_var(t.left, var)
        in_right = term_has_var(t.right, var)
        if in_left and in_right:
            sp = _self_product(t, var)
            if sp is not None:
                base, marker = sp
                if marker == 0:
                    r = _isqrt(c)
                    return _solve_eq(base, var, r, env) if r * r == c else _EMPTY
                k = (_isqrt(4 * c + 1) - 1) // 2
                return _solve_eq(base, var, k, env) if k * (k + 1) == c else _EMPTY
            if isinstance(t, Add) and t.left == t.right:
                return _solve_eq(t.left, var, c // 2, env) if c % 2 == 0 else _EMPTY
            return None
        side = t.left if in_left else t.right
        other = t.right if in_left else t.left
        k = eval_term(other, env)
        if isinstance(t, Add):
            return _EMPTY if c < k else _solve_eq(side, var, c - k, env)
        if k == 0:
            return _ALL if c == 0 else _EMPTY
        return _solve_eq(side, var, c // k, env) if c % k == 0 else _EMPTY
    return None


def _solve_le(t: Term, var: int, c: int, env: Env) -> _Interval:
    """Exact solution interval of t(var=w) <= c (always of the form [0, hi])."""
    if not term_has_var(t, var):
        return _ALL if eval_term(t, env) <= c else _EMPTY
    if isinstance(t, Var):
        return (0, c)
    if isinstance(t, Succ):
        return _EMPTY if c == 0 else _solve_le(t.arg, var, c - 1, env)
    if isinstance(t, (Add, Mul)):
        in_left = term_has_var(t.left, var)
        in_right = term_has_var(t.right, var)
        if in_left and in_right:
            sp = _self_product(t, var)
            if sp is not None:
                base, marker = sp
                if marker == 0:
                    return _solve_le(base, var, _isqrt(c), env)
                k = (_isqrt(4 * c + 1) - 1) // 2
                while k * (k + 1) > c:  # guard against isqrt edge rounding
                    k -= 1
                return _solve_le(base, var, k, env)
            if isinstance(t, Add) and t.left == t.right:
                return _solve_le(t.left, var, c // 2, env)
            return None
        side = t.left if in_left else t.right
        other = t.right if in_left else t.left
        k = eval_term(other, env)
        if isinstance(t, Add):
            return _EMPTY if c < k else _solve_le(side, var, c - k, env)
        if k == 0:
            return _ALL
        return _solve_le(side, var, c // k, env)
    return None


def _solve_ge(t: Term, var: int, c: int, env: Env) -> _Interval:
    """Exact solution interval of t(var=w) >= c (of the form [lo, None])."""
    if c == 0:
        return _ALL
    if not term_has_var(t, var):
        return _ALL if eval_term(t, env) >= c else _EMPTY
    if isinstance(t, Var):
        return (c, None)
    if isinstance(t, Succ):
        return _solve_ge(t.arg, var, c - 1, env)
    if isinstance(t, (Add, Mul)):
        in_left = term_has_var(t.left, var)
        in_right = term_has_var(t.right, var)
        if in_left and in_right:
            sp = _self_product(t, var)
            if sp is not None:
                base, marker = sp
                if marker == 0:
                    r = _isqrt(c - 1) + 1
                    return _solve_ge(base, var, r, env)
                k = (_isqrt(4 * c + 1) - 1) // 2
                if k * (k + 1) < c:
                    k += 1
                return _solve_ge(base, var, k, env)
            if isinstance(t, Add) and t.left == t.right:
                return _solve_ge(t.left, var, (c + 1) // 2, env)
            return None
        side = t.left if in_left else t.right
        other = t.right if in_left else t.left
        k = eval_term(other, env)
        if isinstance(t, Add):
            return _ALL if k >= c else _solve_ge(side, var, c - k, env)
        if k == 0:
            return _EMPTY
        return _solve_ge(side, var, (c + k - 1) // k, env)
    return None


def _atom_interval(g: Formula, var: int, env: Env) -> _Interval:
    """Solution interval of one (possibly negated) atom for ``var``."""
    neg = False
    if isinstance(g, Not) and isinstance(g.body, (Eq, Le)):
        neg, g = True, g.body
    if not isinstance(g, (Eq, Le)):
        return None
    in_left = term_has_var(g.left, var)
    in_right = term_has_var(g.right, var)
    if in_left == in_right:
        return None  # var absent, or present on both sides
    side = g.left if in_left else g.right
    other = g.right if in_left else g.left
    try:
        c = eval_term(other, env)
    except KeyError:
        return None
    if isinstance(g, Eq):
        if neg:
            return None  # a punctured interval is not an interval
        return _solve_eq(side, var, c, env)
    if in_left:  # side <= c, or side > c when negated
        return _solve_ge(side, var, c + 1, env) if neg else _solve_le(side, var, c, env)
    # c <= side, or side < c when negated
    if neg:
        return _EMPTY if c == 0 else _solve_le(side, var, c - 1, env)
    return _solve_ge(side, var, c, env)


def _pin(conjuncts: Sequence[Formula], var: int, env: Env) -> Optional[list[int]]:
    """Candidate list for var from the conjuncts, or None when unpinned.

    Returns [] when the constraints are jointly unsatisfiable, a list of at
    most PIN_CAP values when an interval pins down, and None otherwise.
    """
    lo, hi = 0, None
    for g in conjuncts:
        got = _atom_interval(g, var, env)
        if got is None:
            continue
        glo, ghi = got
        lo = max(lo, glo)
        if ghi is not None:
            hi = ghi if hi is None else min(hi, ghi)
        if hi is not None and lo > hi:
            return []
    if hi is None:
        return None
    if hi - lo + 1 > PIN_CAP:
        return None
    return list(range(lo, hi + 1))


def _counterexample_conjuncts(f: Formula) -> list[Formula]:
    """Necessary conjuncts for NOT f, used to pin forall counterexamples."""
    if isinstance(f, Imp):
        return _flatten_and(f.left) + _counterexample_conjuncts(f.right)
    if isinstance(f, Or):
        return _counterexample_conjuncts(f.left) + _counterexample_conjuncts(f.right)
    if isinstance(f, Not):
        return _flatten_and(f.body)
    if isinstance(f, (Eq, Le)):
        return [Not(f)]
    return []


# ---------------------------------------------------------------------------
# Formula evaluation
# ---------------------------------------------------------------------------

def evaluate(
    f: Formula,
    budget: int,
    env: Optional[Mapping[int, int]] = None,
) -> EvalResult:
    """Three-valued truth of f over the naturals, within the search budget."""
    env = dict(env or {})
    if not env and not free_vars(f):
        fn = _compile_closed(f, budget)
        if fn is not None:
            try:
                return TRUE if fn() else FALSE
            except _CompiledFallback:
                pass
    return _eval(f, env, budget, None, ())


def eval_witnessed(
    f: Formula,
    plan: Plan,
    budget: int,
    env: Optional[Mapping[int, int]] = None,
) -> EvalResult:
    """evaluate(), but unbounded existentials take values from ``plan``."""
    return _eval(f, dict(env or {}), budget, dict(plan), ())


def _eval(
    f: Formula,
    env: Env,
    budget: int,
    plan: Optional[dict],
    path: tuple[int, ...],
) -> EvalResult:
    if isinstance(f, Eq):
        return TRUE if eval_term(f.left, env) == eval_term(f.right, env) else FALSE
    if isinstance(f, Le):
        return TRUE if eval_term(f.left, env) <= eval_term(f.right, env) else FALSE
    if isinstance(f, Not):
        r = _eval(f.body, env, budget, plan, path + (0,))
        if r.verdict is None:
            return r
        return FALSE if r.verdict else TRUE
    if isinstance(f, And):
        left = _eval(f.left, env, budget, plan, path + (0,))
        if left.verdict is False:
            return FALSE
        right = _eval(f.right, env, budget, plan, path + (1,))
        if right.verdict is False:
            return FALSE
        if left.verdict is None:
            return left
        if right.verdict is None:
            return right
        return TRUE
    if isinstance(f, Or):
        left = _eval(f.left, env, budget, plan, path + (0,))
        if left.verdict is True:
            return TRUE
        right = _eval(f.right, env, budget, plan, path + (1,))
        if right.verdict is True:
            return TRUE
        if left.verdict is None:
            return left
        if right.verdict is None:
            return right
        return FALSE
    if isinstance(f, Imp):
        left = _eval(f.left, env, budget, plan, path + (0,))
        if left.verdict is False:
            return TRUE
        right = _eval(f.right, env, budget, plan, path + (1,))
        if right.verdict is True:
            return TRUE
        if left.verdict is None:
            return left
        if right.verdict is None:
            return right
        return FALSE if left.verdict and not right.verdict else TRUE
    assert isinstance(f, (ForAll, Exists))
    return _eval_quantifier(f, env, budget, plan, path)


def _eval_body_at(
    f: Formula,
    w: int,
    env: Env,
    budget: int,
    plan: Optional[dict],
    path: tuple[int, ...],
) -> EvalResult:
    env[f.var] = w
    try:
        return _eval(f.body, env, budget, plan, path + (0,))
    finally:
        del env[f.var]


def _eval_quantifier(
    f: Union[ForAll, Exists],
    env: Env,
    budget: int,
    plan: Optional[dict],
    path: tuple[int, ...],
) -> EvalResult:
    shape = match_bounded(f)
    saved = env.pop(f.var, None)
    try:
        if shape is not None:
            return _eval_bounded(f, shape, env, budget, plan, path)
        if isinstance(f, Exists):
            return _eval_exists_unbounded(f, env, budget, plan, path)
        return _eval_forall_unbounded(f, env, budget, plan, path)
    finally:
        if saved is not None:
            env[f.var] = saved


def _eval_bounded(
    f: Union[ForAll, Exists],
    shape: BoundedShape,
    env: Env,
    budget: int,
    plan: Optional[dict],
    path: tuple[int, ...],
) -> EvalResult:
    bound = eval_term(shape.bound, env)
    if isinstance(f, Exists):
        candidates = _pin(_flatten_and(f.body), f.var, env)
        if candidates == []:
            return FALSE
        if candidates is not None:
            saw_unknown: Optional[EvalResult] = None
            for w in candidates:
                r = _eval_body_at(f, w, env, budget, plan, path)
                if r.verdict is True:
                    return TRUE
                if r.verdict is None and saw_unknown is None:
                    saw_unknown = r
            return saw_unknown if saw_unknown is not None else FALSE
        if bound > budget:
            return UNKNOWN_BOUND
        saw_unknown = None
        for w in range(bound + 1):
            r = _eval_body_at(f, w, env, budget, plan, path)
            if r.verdict is True:
                return TRUE
            if r.verdict is None and saw_unknown is None:
                saw_unknown = r
        return saw_unknown if saw_unknown is not None else FALSE
    # bounded forall: counterexamples must satisfy the guard and refute the body
    constraints = [Le(Var(f.var), shape.bound)] + _counterexample_conjuncts(shape.body)
    candidates = _pin(constraints, f.var, env)
    if candidates == []:
        return TRUE
    if candidates is not None:
        saw_unknown = None
        for w in candidates:
            r = _eval_body_at(f, w, env, budget, plan, path)
            if r.verdict is False:
                return FALSE
            if r.verdict is None and saw_unknown is None:
                saw_unknown = r
        return saw_unknown if saw_unknown is not None else TRUE
    if bound > budget:
        return UNKNOWN_BOUND
    saw_unknown = None
    for w in range(bound + 1):
        r = _eval_body_at(f, w, env, budget, plan, path)
        if r.verdict is False:
            return FALSE
        if r.verdict is None and saw_unknown is None:
            saw_unknown = r
    return saw_unknown if saw_unknown is not None else TRUE


def _eval_exists_unbounded(
    f: Exists,
    env: Env,
    budget: int,
    plan: Optional[dict],
    path: tuple[int, ...],
) -> EvalResult:
    if plan is not None:
        if path not in plan:
            raise MissingWitness(path)
        return _eval_body_at(f, plan[path], env, budget, plan, path)
    conjuncts = _flatten_and(f.body)
    candidates = _pin(conjuncts, f.var, env)
    if candidates == []:
        return FALSE
    if candidates is not None:
        saw_unknown: Optional[EvalResult] = None
        for w in candidates:
            r = _eval_body_at(f, w, env, budget, plan, path)
            if r.verdict is True:
                return TRUE
            if r.verdict is None and saw_unknown is None:
                saw_unknown = r
        return saw_unknown if saw_unknown is not None else FALSE
    for w in range(budget + 1):
        r = _eval_body_at(f, w, env, budget, plan, path)
        if r.verdict is True:
            return TRUE
    return UNKNOWN_BUDGET


def _eval_forall_unbounded(
    f: ForAll,
    env: Env,
    budget: int,
    plan: Optional[dict],
    path: tuple[int, ...],
) -> EvalResult:
    # Never True: only a counterexample decides, otherwise Unknown.
    candidates = _pin(_counterexample_conjuncts(f.body), f.var, env)
    if candidates:
        for w in candidates:
            r = _eval_body_at(f, w, env, budget, plan, path)
            if r.verdict is False:
                return FALSE
    for w in range(budget + 1):
        r = _eval_body_at(f, w, env, budget, plan, path)
        if r.verdict is False:
            return FALSE
    return UNKNOWN_BUDGET


# ---------------------------------------------------------------------------
# Cutoff semantics (oracle)
# ---------------------------------------------------------------------------

def cutoff_eval(f: Formula, cutoff: int, env: Optional[Mapping[int, int]] = None) -> bool:
    """Truth with every quantifier relativized to 0..cutoff, arithmetic exact."""
    env = dict(env or {})

    def rec(g: Formula) -> bool:
        if isinstance(g, Eq):
            return eval_term(g.left, env) == eval_term(g.right, env)
        if isinstance(g, Le):
            return eval_term(g.left, env) <= eval_term(g.right, env)
        if isinstance(g, Not):
            return not rec(g.body)
        if isinstance(g, And):
            return rec(g.left) and rec(g.right)
        if isinstance(g, Or):
            return rec(g.left) or rec(g.right)
        if isinstance(g, Imp):
            return (not rec(g.left)) or rec(g.right)
        assert isinstance(g, (ForAll, Exists))
        saved = env.pop(g.var, None)
        try:
            if isinstance(g, ForAll):
                return all(_at(g, w) for w in range(cutoff + 1))
            return any(_at(g, w) for w in range(cutoff + 1))
        finally:
            if saved is not None:
                env[g.var] = saved

    def _at(g: Union[ForAll, Exists], w: int) -> bool:
        env[g.var] = w
        try:
            return rec(g.body)
        finally:
            del env[g.var]

    return rec(f)


# ---------------------------------------------------------------------------
# Compiled fast path for closed, fully bounded formulas
# ---------------------------------------------------------------------------

class _CompiledFallback(Exception):
    """A compiled formula hit a bound above the budget; use the tree walk."""


def compile_delta0(f: Formula, budget: int = 10**9):
    """Compile a formula whose quantifiers are all bounded shapes into a
    Python function of its free variables (in index order).  Returns None
    when the formula is outside that fragment.  Verdicts agree with the
    tree-walking evaluator by construction: both semantics iterate the same
    ranges exactly (pinning never changes a definitive verdict), and any
    bound above budget aborts the call via an internal exception that
    evaluate() turns back into a tree walk.
    """

    def term(t: Term) -> Optional[str]:
        if isinstance(t, Zero):
            return "0"
        if isinstance(t, Num):
            return str(t.value)
        if isinstance(t, Var):
            return f"v{t.index}"
        if isinstance(t, Succ):
            a = term(t.arg)
            return None if a is None else f"({a} + 1)"
        if isinstance(t, (Add, Mul)):
            a, b = term(t.left), term(t.right)
            if a is None or b is None:
                return None
            op = "+" if isinstance(t, Add) else "*"
            return f"({a} {op} {b})"
        return None  # CodeNumeral: stay on the honest path

    def formula(g: Formula) -> Optional[str]:
        if isinstance(g, Eq):
            a, b = term(g.left), term(g.right)
            return None if a is None or b is None else f"({a} == {b})"
        if isinstance(g, Le):
            a, b = term(g.left), term(g.right)
            return None if a is None or b is None else f"({a} <= {b})"
        if isinstance(g, Not):
            a = formula(g.body)
            return None if a is None else f"(not {a})"
        if isinstance(g, (And, Or, Imp)):
            a, b = formula(g.left), formula(g.right)
            if a is None or b is None:
                return None
            if isinstance(g, And):
                return f"({a} and {b})"
            if isinstance(g, Or):
                return f"({a} or {b})"
            return f"((not {a}) or {b})"
        shape = match_bounded(g)
        if shape is None:
            return None
        bound = term(shape.bound)
        if bound is None:
            return None
        special = _divisibility_shortcut(g, shape, term)
        if special is not None:
            return special
        body = formula(shape.body)
        if body is None:
            return None
        agg = "all" if isinstance(g, ForAll) else "any"
        return f"{agg}({body} for v{shape.var} in range(_ck({bound}) + 1))"

    def _divisibility_shortcut(g, shape, term_fn) -> Optional[str]:
        # E q <= t (a*q = b) and orientations, with q out of a, b, t.
        if not isinstance(g, Exists) or not isinstance(shape.body, Eq):
            return None
        eq = shape.body
        v = shape.var
        for lhs, rhs in ((eq.left, eq.right), (eq.right, eq.left)):
            if not isinstance(lhs, Mul):
                continue
            for x, a in ((lhs.left, lhs.right), (lhs.right, lhs.left)):
                if x == Var(v) and not term_has_var(a, v) and not term_has_var(rhs, v):
                    sa, sb, st = term_fn(a), term_fn(rhs), term_fn(shape.bound)
                    if None in (sa, sb, st):
                        return None
                    return f"_divq({sa}, {sb}, {st})"
        return None

    src = formula(f)
    if src is None:
        return None

    def _ck(bound: int) -> int:
        if bound > budget:
            raise _CompiledFallback()
        return bound

    def _divq(a: int, b: int, t: int) -> bool:
        if a == 0:
            return b == 0
        return b % a == 0 and b // a <= t

    namespace = {"_ck": _ck, "_divq": _divq}
    params = ", ".join(f"v{i}" for i in sorted(free_vars(f)))
    code = compile(f"lambda {params}: {src}", "<godelkit-compiled>", "eval")
    return eval(code, namespace)


def _compile_closed(f: Formula, budget: int):
    return compile_delta0(f, budget)


# The contract names this operation eval(); evaluate() is the Python-safe
# spelling and this alias keeps the documented name importable.
eval_formula = evaluate
