"""Arithmetized syntax and provability.

Everything here turns a metatheoretic relation on codes (is a term, is a
formula, is the result of a substitution, is a proof of) into a first-order
formula over {0, S, +, *, =, <=} that defines the same relation on the
naturals.  The uniform trick is the certificate table: a relation defined by
structural recursion is witnessed by a finite sequence of rows, each row
justified by rows strictly before it, and the formula says "there exists a
coded table, every row of which is locally justified, containing the row I
care about".  Tables ride on the beta-function sequence coding, so a table is
a single number and row access is bounded arithmetic.

Two design rules keep these formulas usable rather than merely correct:

* Every internal quantifier is bounded, and every bounded existential is
  pinned by an equation the evaluator can invert (quotients and square roots
  arrive through explicit bracketing inequalities).  Evaluation of a table
  check therefore costs a few exact integer operations per row instead of a
  search, and the only unbounded existentials left are the table codes
  themselves, which callers supply through witness plans.
* Witness plans cannot reach under an unbounded universal, so nothing under a
  row loop is ever a plain existential.

The module also owns the Theory record: a named axiom set given both ways, as
a metatheoretic recognizer on formulas and as a one-free-variable formula
recognizing axiom codes, together with a supplier of certificate tables for
the codes the formula existentially quantifies over.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .coding import (
    CodeOverflowError,
    CodingScheme,
    DecodeError,
    DEFAULT_BIT_LIMIT,
    FULL,
    code_bits_estimate,
    pair,
    seq_encode,
)
from .evaluator import eval_witnessed
from .hierarchy import Classification, DELTA0, classify, sigma
from .proofs import LogicalAxiom, TheoryAxiom, decode_proof, proof_steps
from .syntax import (
    Add,
    And,
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
    ZERO,
    ONE,
    Zero,
    formulas_equal,
    free_vars,
    is_closed,
    match_bounded,
    max_index,
    numeral,
    parse_formula,
    print_formula,
    substitute,
    substitute_many,
)

__all__ = [
    "ArithmetizedPredicate",
    "Theory",
    "decide_predicate",
    "extend",
    "format_theory",
    "hoist_exists",
    "make_theory",
    "mk_axioms_pa",
    "mk_axioms_predicate",
    "mk_con",
    "mk_finite_theory",
    "mk_prf",
    "mk_prov",
    "mk_syntax_predicates",
    "parse_theory",
    "witness_exists_paths",
    "CON_CORE_PATH",
]


# ---------------------------------------------------------------------------
# Fresh variables and connective helpers
# ---------------------------------------------------------------------------


class _FB:
    """Fresh-variable allocator; every binder in a built formula is unique."""

    def __init__(self, start: int) -> None:
        self._next = start

    def fresh(self) -> int:
        v = self._next
        self._next += 1
        return v


def _conj(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return Eq(ZERO, ZERO)
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def _disj(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return Not(Eq(ZERO, ZERO))
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


def _bexists(fb: _FB, bound: Term, mk: Callable[[Term], Formula]) -> Formula:
    v = fb.fresh()
    return Exists(v, And(Le(Var(v), bound), mk(Var(v))))


def _bforall(fb: _FB, bound: Term, mk: Callable[[Term], Formula]) -> Formula:
    v = fb.fresh()
    return ForAll(v, Imp(Le(Var(v), bound), mk(Var(v))))


def _bexists_lt(fb: _FB, bound: Term, mk: Callable[[Term], Formula]) -> Formula:
    # strict upper bound: j with j < bound
    return _bexists(fb, bound, lambda j: And(Le(Succ(j), bound), mk(j)))


def _bforall_lt(fb: _FB, bound: Term, mk: Callable[[Term], Formula]) -> Formula:
    return _bforall(fb, bound, lambda j: Imp(Le(Succ(j), bound), mk(j)))


# ---------------------------------------------------------------------------
# Pairing gadgets
#
# pair(x, y) = (x+y)(x+y+1)/2 + y.  Division-free characterizations:
#   z = pair(x, y)      iff  2z = s(s+1) + 2y with s = x + y
#   s = "diagonal of z" iff  s(s+1) <= 2z and 2(z+1) <= (s+1)(s+2)
# Both directions are single equations or bracket pairs the evaluator inverts
# exactly, so each existential below is pinned to one candidate.
# ---------------------------------------------------------------------------


def _pair_eq(z: Term, x: Term, y: Term) -> Formula:
    """z = pair(x, y), as one atom over known values."""
    s = Add(x, y)
    return Eq(Mul(Num(2), z), Add(Mul(s, Succ(s)), Mul(Num(2), y)))


def _bind_pair(fb: _FB, x: Term, y: Term, mk: Callable[[Term], Formula]) -> Formula:
    """Introduce d = pair(x, y) for known x, y and continue with d."""
    s = Add(x, y)
    bound = Mul(Succ(s), Succ(s))  # pair(x, y) <= (x+y+1)^2
    return _bexists(fb, bound, lambda d: And(_pair_eq(d, x, y), mk(d)))


def _split_pair(fb: _FB, z: Term, mk: Callable[[Term, Term], Formula]) -> Formula:
    """Destructure known z as pair(x, y) and continue with the components."""
    two = Num(2)

    def s_body(s: Term) -> Formula:
        lo = Le(Mul(s, Succ(s)), Mul(two, z))
        hi = Le(Mul(two, Succ(z)), Mul(Succ(s), Succ(Succ(s))))

        def y_body(y: Term) -> Formula:
            pin = Eq(Mul(two, z), Add(Mul(s, Succ(s)), Mul(two, y)))
            return And(pin, _bexists(fb, s, lambda x: And(Eq(Add(x, y), s), mk(x, y))))

        return And(lo, And(hi, _bexists(fb, z, y_body)))

    return _bexists(fb, Mul(two, z), s_body)


def _split_seq(fb: _FB, z: Term, mk: Callable[[Term, Term, Term], Formula]) -> Formula:
    """Destructure a sequence code z = pair(pair(a, b), n)."""
    return _split_pair(fb, z, lambda ab, n: _split_pair(fb, ab, lambda a, b: mk(a, b, n)))


# ---------------------------------------------------------------------------
# Sequence member access
#
# Member i of the sequence (a, b) is a mod m with m = 1 + (i+1)*b.  The
# quotient is bracketed the same way as the pairing diagonal.
# ---------------------------------------------------------------------------


def _elem(fb: _FB, a: Term, b: Term, i: Term, mk: Callable[[Term], Formula]) -> Formula:
    m = Succ(Mul(Succ(i), b))

    def q_body(q: Term) -> Formula:
        lo = Le(Mul(q, m), a)
        hi = Le(Succ(a), Add(Mul(q, m), m))
        return And(lo, And(hi, _bexists(fb, a, lambda e: And(Eq(a, Add(Mul(q, m), e)), mk(e)))))

    return _bexists(fb, a, q_body)


def _member(fb: _FB, a: Term, b: Term, count: Term, d: Term) -> Formula:
    """Some row j < count of the sequence (a, b) equals d."""
    return _bexists_lt(fb, count, lambda j: _elem(fb, a, b, j, lambda e: Eq(e, d)))


def _member_pair(fb: _FB, a: Term, b: Term, count: Term, x: Term, y: Term) -> Formula:
    """Some row j < count equals pair(x, y)."""
    return _bind_pair(fb, x, y, lambda d: _member(fb, a, b, count, d))


def _lookup(fb: _FB, a: Term, b: Term, count: Term, key: Term,
            mk: Callable[[Term], Formula]) -> Formula:
    """Find a row j < count of shape pair(key, w) and continue with w."""
    return _bexists_lt(
        fb, count,
        lambda j: _elem(fb, a, b, j,
                        lambda row: _split_pair(fb, row,
                                                lambda x2, w: And(Eq(x2, key), mk(w)))))


# ---------------------------------------------------------------------------
# Tag tests and node destructuring
# ---------------------------------------------------------------------------

_TERM_KEYS = ("zero", "var", "succ", "add", "mul")
_FORMULA_KEYS = ("eq", "le", "not", "and", "or", "imp", "forall", "exists")


def _tag_in(t: Term, values: Sequence[int]) -> Formula:
    values = sorted(values)
    if len(values) > 2 and values == list(range(values[0], values[-1] + 1)):
        return And(Le(Num(values[0]), t), Le(t, Num(values[-1])))
    return _disj([Eq(t, Num(v)) for v in values])


def _dest2(fb: _FB, scheme: CodingScheme, key: str, z: Term,
           mk: Callable[[Term, Term], Formula]) -> Formula:
    """z = pair(tag(key), pair(l, r)); continue with l, r."""
    want = Num(scheme.tag(key))
    return _split_pair(fb, z, lambda t, p: And(Eq(t, want), _split_pair(fb, p, mk)))


def _dest1(fb: _FB, scheme: CodingScheme, key: str, z: Term,
           mk: Callable[[Term], Formula]) -> Formula:
    """z = pair(tag(key), pair(c, 0)); continue with c."""
    return _dest2(fb, scheme, key, z, lambda c, zz: And(Eq(zz, Num(0)), mk(c)))


# ---------------------------------------------------------------------------
# Certificate table validity formulas
# ---------------------------------------------------------------------------


def _valid_syntax_table(fb: _FB, scheme: CodingScheme, a: Term, b: Term, m: Term) -> Formula:
    """Every row r < m is pair(code, kind) justified by earlier rows.

    kind 0 marks term codes, kind 1 formula codes.  A sound table can only
    contain rows whose code component really is a well-formed code of the
    claimed kind: leaf cases are checked exactly and composite cases rebuild
    the code from earlier rows, by strong induction on row position.
    """
    T = scheme.tag
    term_tags = [T(k) for k in _TERM_KEYS]
    formula_tags = [T(k) for k in _FORMULA_KEYS]
    zero = Num(0)
    one = Num(1)

    def row_body(r: Term) -> Formula:
        def with_row(row: Term) -> Formula:
            def with_ck(c: Term, k: Term) -> Formula:
                def with_tp(t: Term, p: Term) -> Formula:
                    def with_halves(pl: Term, pr: Term) -> Formula:
                        def mem(z: Term, kind: Term) -> Formula:
                            return _member_pair(fb, a, b, r, z, kind)

                        cases = [
                            _conj([Eq(t, Num(T("zero"))), Eq(p, zero), Eq(k, zero)]),
                            And(Eq(t, Num(T("var"))), Eq(k, zero)),
                            _conj([Eq(t, Num(T("succ"))), Eq(k, zero),
                                   Eq(pr, zero), mem(pl, zero)]),
                            _conj([_tag_in(t, [T("add"), T("mul")]), Eq(k, zero),
                                   mem(pl, zero), mem(pr, zero)]),
                            _conj([_tag_in(t, [T("eq"), T("le")]), Eq(k, one),
                                   mem(pl, zero), mem(pr, zero)]),
                            _conj([Eq(t, Num(T("not"))), Eq(k, one),
                                   Eq(pr, zero), mem(pl, one)]),
                            _conj([_tag_in(t, [T("and"), T("or"), T("imp")]), Eq(k, one),
                                   mem(pl, one), mem(pr, one)]),
                            # quantifiers: pl is the bound variable index, any value
                            _conj([_tag_in(t, [T("forall"), T("exists")]), Eq(k, one),
                                   mem(pr, one)]),
                        ]
                        return _disj(cases)

                    return _split_pair(fb, p, with_halves)

                return _split_pair(fb, c, with_tp)

            return _split_pair(fb, row, with_ck)

        return _elem(fb, a, b, r, with_row)

    return _bforall_lt(fb, m, row_body)


def _valid_closed_term_table(fb: _FB, scheme: CodingScheme, a: Term, b: Term, m: Term) -> Formula:
    """Rows are codes of closed terms: no variable case at all."""
    T = scheme.tag
    zero = Num(0)

    def row_body(r: Term) -> Formula:
        def with_tp(t: Term, p: Term) -> Formula:
            def with_halves(pl: Term, pr: Term) -> Formula:
                cases = [
                    And(Eq(t, Num(T("zero"))), Eq(p, zero)),
                    _conj([Eq(t, Num(T("succ"))), Eq(pr, zero), _member(fb, a, b, r, pl)]),
                    _conj([_tag_in(t, [T("add"), T("mul")]),
                           _member(fb, a, b, r, pl), _member(fb, a, b, r, pr)]),
                ]
                return _disj(cases)

            return _split_pair(fb, p, with_halves)

        return _elem(fb, a, b, r, lambda row: _split_pair(fb, row, with_tp))

    return _bforall_lt(fb, m, row_body)


def _valid_sub_table(fb: _FB, scheme: CodingScheme, a: Term, b: Term, m: Term,
                     vv: Term, ct: Term) -> Formula:
    """Rows pair(x, y) trace substitution of ct for variable vv.

    For a well-formed x the relation forces y = the code of x with every free
    occurrence of vv replaced by the term coded by ct.  Each case checks the
    one-level tags of the children it recurses into, and the stopped-binder
    case still demands a row for its body, so the first components of a valid
    table are always well-formed codes.
    """
    T = scheme.tag
    term_tags = [T(k) for k in _TERM_KEYS]
    formula_tags = [T(k) for k in _FORMULA_KEYS]
    zero = Num(0)
    trivially = Eq(Num(0), Num(0))

    def row_body(r: Term) -> Formula:
        def with_xy(x: Term, y: Term) -> Formula:
            def with_tp(tx: Term, px: Term) -> Formula:
                def with_halves(xl: Term, xr: Term) -> Formula:
                    def with_ltag(tl: Term, _pl: Term) -> Formula:
                        def with_rtag(tr: Term, _pr: Term) -> Formula:
                            def found(key: Term, mk: Callable[[Term], Formula]) -> Formula:
                                return _lookup(fb, a, b, r, key, mk)

                            def rebuild1(tag_key: str, y1: Term) -> Formula:
                                return _bind_pair(fb, y1, zero,
                                                  lambda d: _pair_eq(y, Num(T(tag_key)), d))

                            def rebuild2(tag_term: Term, y1: Term, y2: Term) -> Formula:
                                return _bind_pair(fb, y1, y2,
                                                  lambda d: _pair_eq(y, tag_term, d))

                            hit = _conj([Eq(tx, Num(T("var"))), Eq(px, vv), Eq(y, ct)])
                            miss = _conj([Eq(tx, Num(T("var"))), Not(Eq(px, vv)), Eq(y, x)])
                            zero_case = _conj([Eq(tx, Num(T("zero"))), Eq(px, zero), Eq(y, x)])
                            succ_case = _conj([
                                Eq(tx, Num(T("succ"))), Eq(xr, zero), _tag_in(tl, term_tags),
                                found(xl, lambda y1: rebuild1("succ", y1)),
                            ])
                            not_case = _conj([
                                Eq(tx, Num(T("not"))), Eq(xr, zero), _tag_in(tl, formula_tags),
                                found(xl, lambda y1: rebuild1("not", y1)),
                            ])
                            term_args = _conj([
                                _tag_in(tx, [T("add"), T("mul"), T("eq"), T("le")]),
                                _tag_in(tl, term_tags), _tag_in(tr, term_tags),
                                found(xl, lambda y1: found(xr, lambda y2: rebuild2(tx, y1, y2))),
                            ])
                            formula_args = _conj([
                                _tag_in(tx, [T("and"), T("or"), T("imp")]),
                                _tag_in(tl, formula_tags), _tag_in(tr, formula_tags),
                                found(xl, lambda y1: found(xr, lambda y2: rebuild2(tx, y1, y2))),
                            ])
                            binder_stop = _conj([
                                _tag_in(tx, [T("forall"), T("exists")]),
                                Eq(xl, vv), _tag_in(tr, formula_tags),
                                found(xr, lambda _w: trivially),
                                Eq(y, x),
                            ])
                            binder_go = _conj([
                                _tag_in(tx, [T("forall"), T("exists")]),
                                Not(Eq(xl, vv)), _tag_in(tr, formula_tags),
                                found(xr, lambda y2: rebuild2(tx, xl, y2)),
                            ])
                            return _disj([hit, miss, zero_case, succ_case, not_case,
                                          term_args, formula_args, binder_stop, binder_go])

                        return _split_pair(fb, xr, with_rtag)

                    return _split_pair(fb, xl, with_ltag)

                return _split_pair(fb, px, with_halves)

            return _split_pair(fb, x, with_tp)

        return _elem(fb, a, b, r, lambda row: _split_pair(fb, row, with_xy))

    return _bforall_lt(fb, m, row_body)


def _valid_numeral_table(fb: _FB, scheme: CodingScheme, a: Term, b: Term, m: Term) -> Formula:
    """Rows pair(n, c) with c the code of the binary-style numeral of n."""
    T = scheme.tag
    c_zero = Num(scheme.term_code(ZERO))
    c_one = Num(scheme.term_code(ONE))
    c_two = Num(scheme.term_code(Succ(ONE)))  # the doubling factor literal S(S(0))
    tag_mul = Num(T("mul"))
    tag_add = Num(T("add"))

    def row_body(r: Term) -> Formula:
        def with_nc(n: Term, c: Term) -> Formula:
            def even_case(k: Term) -> Formula:
                return _conj([
                    Eq(n, Mul(Num(2), k)), Le(Num(1), k),
                    _lookup(fb, a, b, r, k,
                            lambda ck: _bind_pair(fb, c_two, ck,
                                                  lambda d: _pair_eq(c, tag_mul, d))),
                ])

            def odd_case(k: Term) -> Formula:
                def with_ck(ck: Term) -> Formula:
                    return _bind_pair(
                        fb, c_two, ck,
                        lambda d1: _bind_pair(
                            fb, tag_mul, d1,
                            lambda cmul: _bind_pair(
                                fb, cmul, c_one,
                                lambda d2: _pair_eq(c, tag_add, d2))))

                return _conj([
                    Eq(n, Succ(Mul(Num(2), k))), Le(Num(1), k),
                    _lookup(fb, a, b, r, k, with_ck),
                ])

            cases = [
                And(Eq(n, Num(0)), Eq(c, c_zero)),
                And(Eq(n, Num(1)), Eq(c, c_one)),
                _bexists(fb, n, even_case),
                _bexists(fb, n, odd_case),
            ]
            return _disj(cases)

        return _elem(fb, a, b, r, lambda row: _split_pair(fb, row, with_nc))

    return _bforall_lt(fb, m, row_body)


# ---------------------------------------------------------------------------
# Canonical certificate rows (the meta side of the witnesses)
# ---------------------------------------------------------------------------


def _concrete(t: Term) -> Term:
    if isinstance(t, Num):
        return numeral(t.value)
    if isinstance(t, CodeNumeral):
        raise ValueError("certificate rows require a materializable term")
    return t


def _syntax_rows(items: Sequence[tuple[Union[Term, Formula], int]],
                 scheme: CodingScheme) -> list[int]:
    """Closure rows pair(code, kind) for the given objects, children first."""
    rows: list[int] = []
    seen: set[int] = set()

    def emit(code: int, kind: int) -> None:
        row = pair(code, kind)
        if row not in seen:
            seen.add(row)
            rows.append(row)

    def add_term(t: Term) -> None:
        t = _concrete(t)
        if isinstance(t, Succ):
            add_term(t.arg)
        elif isinstance(t, (Add, Mul)):
            add_term(t.left)
            add_term(t.right)
        emit(scheme.term_code(t), 0)

    def add_formula(f: Formula) -> None:
        if isinstance(f, (Eq, Le)):
            add_term(f.left)
            add_term(f.right)
        elif isinstance(f, Not):
            add_formula(f.body)
        elif isinstance(f, (And, Or, Imp)):
            add_formula(f.left)
            add_formula(f.right)
        elif isinstance(f, (ForAll, Exists)):
            add_formula(f.body)
        emit(scheme.formula_code(f), 1)

    for obj, kind in items:
        if kind == 0:
            add_term(obj)  # type: ignore[arg-type]
        else:
            add_formula(obj)  # type: ignore[arg-type]
    return rows


def _closed_term_rows(t: Term, scheme: CodingScheme) -> list[int]:
    rows: list[int] = []
    seen: set[int] = set()

    def walk(u: Term) -> None:
        u = _concrete(u)
        if isinstance(u, Var):
            raise ValueError("closed-term table over an open term")
        if isinstance(u, Succ):
            walk(u.arg)
        elif isinstance(u, (Add, Mul)):
            walk(u.left)
            walk(u.right)
        c = scheme.term_code(u)
        if c not in seen:
            seen.add(c)
            rows.append(c)

    walk(t)
    return rows


def _sub_rows(f: Formula, var: int, t: Term, scheme: CodingScheme) -> list[int]:
    """Substitution-trace rows pair(x, y) covering f and all its parts.

    t must have no free variable other than var itself, which keeps the naive
    recursion here in step with capture-avoiding substitution.
    """
    if not (free_vars(t) <= {var}):
        raise ValueError("replacement term may only mention the substituted variable")
    t = _concrete(t)
    ct = scheme.term_code(t)
    T = scheme.tag
    rows: list[int] = []
    done: dict[int, int] = {}

    def emit(x: int, y: int) -> int:
        if x not in done:
            done[x] = y
            rows.append(pair(x, y))
        return done[x]

    def walk_term(u: Term) -> int:
        u = _concrete(u)
        x = scheme.term_code(u)
        if x in done:
            return done[x]
        if isinstance(u, Var):
            y = ct if u.index == var else x
        elif isinstance(u, Zero):
            y = x
        elif isinstance(u, Succ):
            y = pair(T("succ"), pair(walk_term(u.arg), 0))
        else:
            assert isinstance(u, (Add, Mul))
            key = "add" if isinstance(u, Add) else "mul"
            y = pair(T(key), pair(walk_term(u.left), walk_term(u.right)))
        return emit(x, y)

    def walk_formula(g: Formula) -> int:
        x = scheme.formula_code(g)
        if x in done:
            return done[x]
        if isinstance(g, (Eq, Le)):
            key = "eq" if isinstance(g, Eq) else "le"
            y = pair(T(key), pair(walk_term(g.left), walk_term(g.right)))
        elif isinstance(g, Not):
            y = pair(T("not"), pair(walk_formula(g.body), 0))
        elif isinstance(g, (And, Or, Imp)):
            key = {And: "and", Or: "or", Imp: "imp"}[type(g)]
            y = pair(T(key), pair(walk_formula(g.left), walk_formula(g.right)))
        else:
            assert isinstance(g, (ForAll, Exists))
            key = "forall" if isinstance(g, ForAll) else "exists"
            if g.var == var:
                walk_formula(g.body)  # strictness: the stopped body still gets a row
                y = x
            else:
                y = pair(T(key), pair(g.var, walk_formula(g.body)))
        return emit(x, y)

    result = walk_formula(f)
    expected = scheme.formula_code(substitute(f, var, t))
    if result != expected:
        raise AssertionError("substitution trace disagrees with substitute()")
    return rows


def _numeral_rows(n: int, scheme: CodingScheme) -> list[int]:
    need = {n}
    work = [n]
    while work:
        m = work.pop()
        if m >= 2 and (m // 2) not in need:
            need.add(m // 2)
            work.append(m // 2)
    return [pair(m, scheme.term_code(numeral(m))) for m in sorted(need)]


# ---------------------------------------------------------------------------
# Arithmetized predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ArithmetizedPredicate:
    """A relation on naturals given by a formula with variables v0..v(k-1).

    witness_paths are the tree paths of the unbounded existentials a witness
    plan must fill, in the order witnesses() yields values.  core_paths mark
    the subtrees an annotated classification may treat as bounded atoms (used
    when the relation is decidable but presented with unbounded quantifiers).
    """

    name: str
    formula: Formula
    free_var_roles: tuple[str, ...]
    declared_class: Classification
    justification: str
    scheme: CodingScheme
    witness_paths: tuple[tuple[int, ...], ...] = ()
    witnesses: Optional[Callable[..., tuple[int, ...]]] = None
    core_paths: tuple[tuple[int, ...], ...] = ((),)

    @property
    def arity(self) -> int:
        return len(self.free_var_roles)

    def annotation(self, prefix: tuple[int, ...] = ()) -> dict[tuple[int, ...], Classification]:
        """Annotation marking this predicate's cores, shifted under prefix."""
        return {prefix + p: DELTA0 for p in self.core_paths}

    def __post_init__(self) -> None:
        if free_vars(self.formula) != frozenset(range(self.arity)):
            raise ValueError(f"{self.name}: formula must use exactly v0..v{self.arity - 1}")


def witness_exists_paths(f: Formula) -> tuple[tuple[int, ...], ...]:
    """Paths of the unbounded existentials a witness plan can serve.

    Walks through connectives and plain existential prefixes; stops at
    universals and bounded blocks, where a single planned value could not be
    correct across iterations.
    """
    out: list[tuple[int, ...]] = []

    def go(g: Formula, path: tuple[int, ...]) -> None:
        if isinstance(g, Exists) and match_bounded(g) is None:
            out.append(path)
            go(g.body, path + (0,))
        elif isinstance(g, Not):
            go(g.body, path + (0,))
        elif isinstance(g, (And, Or, Imp)):
            go(g.left, path + (0,))
            go(g.right, path + (1,))

    go(f, ())
    return tuple(out)


def decide_predicate(pred: ArithmetizedPredicate, args: Sequence[int],
                     budget: int = 1_000_000) -> bool:
    """Evaluate pred at args with its own certificate witnesses plugged in."""
    if pred.witnesses is None:
        raise ValueError(f"{pred.name} carries no decision witnesses")
    if len(args) != pred.arity:
        raise ValueError(f"{pred.name} takes {pred.arity} arguments")
    wit = tuple(pred.witnesses(*args))
    if len(wit) != len(pred.witness_paths):
        raise RuntimeError(f"{pred.name}: witness supplier returned {len(wit)} values "
                           f"for {len(pred.witness_paths)} paths")
    plan = dict(zip(pred.witness_paths, wit))
    env = {i: int(a) for i, a in enumerate(args)}
    res = eval_witnessed(pred.formula, plan, budget, env=env)
    if res.verdict is None:
        raise RuntimeError(f"{pred.name}{tuple(args)} undecided: {res.reason}")
    return res.verdict


# ---------------------------------------------------------------------------
# Syntax predicates
# ---------------------------------------------------------------------------


def _mk_is_code(kind: int, name: str, scheme: CodingScheme) -> ArithmetizedPredicate:
    fb = _FB(1)
    tab = fb.fresh()
    body = _split_seq(
        fb, Var(tab),
        lambda a, b, m: And(_valid_syntax_table(fb, scheme, a, b, m),
                            _member_pair(fb, a, b, m, Var(0), Num(kind))))
    formula = Exists(tab, body)

    def witnesses(n: int) -> tuple[int, ...]:
        try:
            obj = scheme.decode_term(n) if kind == 0 else scheme.decode_formula(n)
        except DecodeError:
            return (0,)
        return (seq_encode(_syntax_rows([(obj, kind)], scheme)),)

    return ArithmetizedPredicate(
        name=name,
        formula=formula,
        free_var_roles=("code",),
        declared_class=sigma(1),
        justification="decidable by structural recursion; the table of "
                      "subobject codes is the size-bounded certificate",
        scheme=scheme,
        witness_paths=witness_exists_paths(formula),
        witnesses=witnesses,
    )


def _mk_neg_of(scheme: CodingScheme, is_formula_wit) -> ArithmetizedPredicate:
    fb = _FB(2)
    tab = fb.fresh()
    x, y = Var(0), Var(1)
    body = And(
        _split_seq(fb, Var(tab),
                   lambda a, b, m: And(_valid_syntax_table(fb, scheme, a, b, m),
                                       _member_pair(fb, a, b, m, x, Num(1)))),
        _bind_pair(fb, x, Num(0),
                   lambda d: _pair_eq(y, Num(scheme.tag("not")), d)))
    formula = Exists(tab, body)

    def witnesses(xv: int, yv: int) -> tuple[int, ...]:
        return is_formula_wit(xv)

    return ArithmetizedPredicate(
        name="NegOf",
        formula=formula,
        free_var_roles=("formula code", "negation code"),
        declared_class=sigma(1),
        justification="negating a code is one pairing step on a certified formula code",
        scheme=scheme,
        witness_paths=witness_exists_paths(formula),
        witnesses=witnesses,
    )


def _mk_numeral_rel(scheme: CodingScheme) -> ArithmetizedPredicate:
    fb = _FB(2)
    tab = fb.fresh()
    body = _split_seq(
        fb, Var(tab),
        lambda a, b, m: And(_valid_numeral_table(fb, scheme, a, b, m),
                            _member_pair(fb, a, b, m, Var(0), Var(1))))
    formula = Exists(tab, body)

    def witnesses(n: int, c: int) -> tuple[int, ...]:
        return (seq_encode(_numeral_rows(n, scheme)),)

    return ArithmetizedPredicate(
        name="Num",
        formula=formula,
        free_var_roles=("value", "numeral code"),
        declared_class=sigma(1),
        justification="the halving chain from n down to 1 certifies the "
                      "binary numeral code in O(log n) rows",
        scheme=scheme,
        witness_paths=witness_exists_paths(formula),
        witnesses=witnesses,
    )


def _formula_tag_check(scheme: CodingScheme, fb: _FB, x: Term) -> Formula:
    tags = [scheme.tag(k) for k in _FORMULA_KEYS]
    return _split_pair(fb, x, lambda t, _p: _tag_in(t, tags))


def _mk_sub(scheme: CodingScheme) -> ArithmetizedPredicate:
    fb = _FB(4)
    ntab, stab = fb.fresh(), fb.fresh()
    x, v, n, y = Var(0), Var(1), Var(2), Var(3)
    body = _conj([
        _formula_tag_check(scheme, fb, x),
        _split_seq(fb, Var(ntab),
                   lambda a, b, m: And(_valid_numeral_table(fb, scheme, a, b, m),
                                       _lookup(fb, a, b, m, n,
                                               lambda cn: _split_seq(
                                                   fb, Var(stab),
                                                   lambda a2, b2, m2: And(
                                                       _valid_sub_table(fb, scheme, a2, b2, m2, v, cn),
                                                       _member_pair(fb, a2, b2, m2, x, y)))))),
    ])
    formula = Exists(ntab, Exists(stab, body))

    def witnesses(xv: int, vv: int, nv: int, yv: int) -> tuple[int, ...]:
        try:
            f = scheme.decode_formula(xv)
        except DecodeError:
            return (0, 0)
        return (seq_encode(_numeral_rows(nv, scheme)),
                seq_encode(_sub_rows(f, vv, numeral(nv), scheme)))

    return ArithmetizedPredicate(
        name="Sub",
        formula=formula,
        free_var_roles=("formula code", "variable index", "value", "result code"),
        declared_class=sigma(1),
        justification="substitution is structural recursion; its trace rows "
                      "are the certificate",
        scheme=scheme,
        witness_paths=witness_exists_paths(formula),
        witnesses=witnesses,
    )


def _mk_diag(scheme: CodingScheme) -> ArithmetizedPredicate:
    fb = _FB(2)
    ntab, stab = fb.fresh(), fb.fresh()
    x, y = Var(0), Var(1)
    body = _conj([
        _formula_tag_check(scheme, fb, x),
        _split_seq(fb, Var(ntab),
                   lambda a, b, m: And(_valid_numeral_table(fb, scheme, a, b, m),
                                       _lookup(fb, a, b, m, x,
                                               lambda cn: _split_seq(
                                                   fb, Var(stab),
                                                   lambda a2, b2, m2: And(
                                                       _valid_sub_table(fb, scheme, a2, b2, m2,
                                                                        Num(0), cn),
                                                       _member_pair(fb, a2, b2, m2, x, y)))))),
    ])
    formula = Exists(ntab, Exists(stab, body))

    def witnesses(xv: int, yv: int) -> tuple[int, ...]:
        try:
            f = scheme.decode_formula(xv)
        except DecodeError:
            return (0, 0)
        return (seq_encode(_numeral_rows(xv, scheme)),
                seq_encode(_sub_rows(f, 0, numeral(xv), scheme)))

    return ArithmetizedPredicate(
        name="Diag",
        formula=formula,
        free_var_roles=("formula code", "result code"),
        declared_class=sigma(1),
        justification="substituting a formula's own numeral for v0 composes "
                      "the numeral and substitution certificates",
        scheme=scheme,
        witness_paths=witness_exists_paths(formula),
        witnesses=witnesses,
    )


def mk_syntax_predicates(scheme: CodingScheme = FULL) -> dict[str, ArithmetizedPredicate]:
    """The stock of syntax relations: IsTerm, IsFormula, NegOf, Num, Sub, Diag."""
    is_term = _mk_is_code(0, "IsTerm", scheme)
    is_formula = _mk_is_code(1, "IsFormula", scheme)
    return {
        "IsTerm": is_term,
        "IsFormula": is_formula,
        "NegOf": _mk_neg_of(scheme, is_formula.witnesses),
        "Num": _mk_numeral_rel(scheme),
        "Sub": _mk_sub(scheme),
        "Diag": _mk_diag(scheme),
    }


# ---------------------------------------------------------------------------
# Theories
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Theory:
    """An axiomatized theory, given both meta- and object-theoretically.

    meta_axiom_recognizer decides axiomhood of formulas; axioms_formula is a
    one-free-variable formula true of exactly the axiom codes (below any
    bound anyone checks; the agreement is a test obligation, not a promise by
    construction).  axiom_witnesses(code) supplies values for the unbounded
    existentials of axioms_formula, in witness_exists_paths order.
    """

    name: str
    scheme: CodingScheme
    base_axioms: tuple[Formula, ...]
    induction: bool
    meta_axiom_recognizer: Callable[[Formula], bool]
    axioms_formula: Formula
    presentation: Classification
    axiom_witnesses: Callable[[int], tuple[int, ...]]

    def is_axiom(self, f: Formula) -> bool:
        return self.meta_axiom_recognizer(f)

    def __post_init__(self) -> None:
        if free_vars(self.axioms_formula) != frozenset({0}):
            raise ValueError("axioms_formula must have exactly v0 free")
        if self.presentation not in (DELTA0, sigma(1)):
            raise ValueError("axiom sets must be presented as Delta0 or Sigma(1)")
        actual = classify(self.axioms_formula)
        if not actual.le(self.presentation):
            raise ValueError(f"axioms_formula classifies as {actual}, "
                             f"above the declared {self.presentation}")


def _match_induction(f: Formula) -> Optional[tuple[int, Formula]]:
    """If f is an induction instance, return its (variable, matrix)."""
    if not isinstance(f, Imp) or not isinstance(f.right, ForAll):
        return None
    v, theta = f.right.var, f.right.body
    if not isinstance(f.left, And):
        return None
    base, step = f.left.left, f.left.right
    if not isinstance(step, ForAll) or step.var != v or not isinstance(step.body, Imp):
        return None
    if not formulas_equal(step.body.left, theta):
        return None
    if not formulas_equal(base, substitute(theta, v, ZERO)):
        return None
    if not formulas_equal(step.body.right, substitute(theta, v, Succ(Var(v)))):
        return None
    return v, theta


def _induction_matrix(fb: _FB, scheme: CodingScheme, x: Term, w1: Term, w2: Term) -> Formula:
    """x codes Imp(And(theta[v:=0], ForAll v (theta -> theta[v:=S(v)])), ForAll v theta).

    w1 and w2 are the two substitution tables.  The explicit tag check on the
    matrix code plus the strictness of the tables make the whole decomposition
    force x to be a well-formed formula code, so no separate syntax table is
    needed here.
    """
    T = scheme.tag
    formula_tags = [T(k) for k in _FORMULA_KEYS]
    c_zero_term = Num(scheme.term_code(ZERO))

    def with_parts(ante: Term, concl: Term) -> Formula:
        def with_concl(v: Term, ctheta: Term) -> Formula:
            theta_is_formula = _split_pair(fb, ctheta, lambda tt, _p: _tag_in(tt, formula_tags))

            def with_ante(cbase: Term, cstep: Term) -> Formula:
                def with_step(v2: Term, cimp: Term) -> Formula:
                    def with_imp(cth2: Term, cthS: Term) -> Formula:
                        base_table = _split_seq(
                            fb, w1,
                            lambda a, b, m: And(
                                _valid_sub_table(fb, scheme, a, b, m, v, c_zero_term),
                                _member_pair(fb, a, b, m, ctheta, cbase)))

                        def step_table(csv: Term) -> Formula:
                            return _split_seq(
                                fb, w2,
                                lambda a, b, m: And(
                                    _valid_sub_table(fb, scheme, a, b, m, v, csv),
                                    _member_pair(fb, a, b, m, ctheta, cthS)))

                        # csv = code of S(v): pair(succ, pair(pair(var, v), 0))
                        succ_of_var = _bind_pair(
                            fb, Num(T("var")), v,
                            lambda cvar: _bind_pair(
                                fb, cvar, Num(0),
                                lambda cin: _bind_pair(
                                    fb, Num(T("succ")), cin, step_table)))

                        return _conj([Eq(v2, v), Eq(cth2, ctheta),
                                      base_table, succ_of_var])

                    return _dest2(fb, scheme, "imp", cimp, with_imp)

                return _dest2(fb, scheme, "forall", cstep, with_step)

            return And(theta_is_formula, _dest2(fb, scheme, "and", ante, with_ante))

        return _dest2(fb, scheme, "forall", concl, with_concl)

    return _dest2(fb, scheme, "imp", x, with_parts)


def _pack_cell(values: Sequence[int]) -> int:
    """Pack witness values into one number, matching _unpack_cell's splits."""
    vals = list(values)
    if not vals:
        return 0
    out = vals[-1]
    for v in reversed(vals[:-1]):
        out = pair(v, out)
    return out


def make_theory(name: str, base_axioms: Sequence[Formula], induction: bool,
                scheme: CodingScheme = FULL) -> Theory:
    """Assemble a Theory from closed base axioms and an optional induction scheme."""
    base = tuple(base_axioms)
    for ax in base:
        if free_vars(ax):
            raise ValueError(f"axiom {print_formula(ax)} is not a sentence")
    # Axioms with feasible codes get literal numerals; the rest stay symbolic
    # (a reparsed Con tower carries axioms whose codes cannot be materialized).
    base_codes: list[Optional[int]] = []
    base_eqs: list[Formula] = []
    for ax in base:
        if code_bits_estimate(scheme, ax) <= DEFAULT_BIT_LIMIT:
            c = scheme.formula_code(ax)
            base_codes.append(c)
            base_eqs.append(Eq(Var(0), Num(c)))
        else:
            base_codes.append(None)
            base_eqs.append(Eq(Var(0), CodeNumeral(ax, scheme)))

    def recognizer(f: Formula) -> bool:
        if any(formulas_equal(f, ax) for ax in base):
            return True
        return induction and _match_induction(f) is not None

    if induction:
        fb = _FB(1)
        w1, w2 = fb.fresh(), fb.fresh()
        matrix = _disj(base_eqs + [_induction_matrix(fb, scheme, Var(0), Var(w1), Var(w2))])
        axioms_formula = Exists(w1, Exists(w2, matrix))
        presentation = sigma(1)

        def axiom_witnesses(code: int) -> tuple[int, ...]:
            if code in base_codes:
                return (0, 0)
            try:
                f = scheme.decode_formula(code)
            except DecodeError:
                return (0, 0)
            m = _match_induction(f)
            if m is None:
                return (0, 0)
            v, theta = m
            return (seq_encode(_sub_rows(theta, v, ZERO, scheme)),
                    seq_encode(_sub_rows(theta, v, Succ(Var(v)), scheme)))
    else:
        axioms_formula = _disj(base_eqs)
        presentation = DELTA0

        def axiom_witnesses(code: int) -> tuple[int, ...]:
            return ()

    return Theory(
        name=name,
        scheme=scheme,
        base_axioms=base,
        induction=induction,
        meta_axiom_recognizer=recognizer,
        axioms_formula=axioms_formula,
        presentation=presentation,
        axiom_witnesses=axiom_witnesses,
    )


_PA_AXIOM_TEXT = (
    "A v0 . ~(S(v0) = 0)",
    "A v0 . A v1 . (S(v0) = S(v1) -> v0 = v1)",
    "A v0 . (v0 + 0) = v0",
    "A v0 . A v1 . (v0 + S(v1)) = S((v0 + v1))",
    "A v0 . (v0 * 0) = 0",
    "A v0 . A v1 . (v0 * S(v1)) = ((v0 * v1) + v0)",
    "A v0 . A v1 . (v0 <= v1 -> E v2 . (v2 + v0) = v1)",
    "A v0 . A v1 . ((E v2 . (v2 + v0) = v1) -> v0 <= v1)",
)


def mk_axioms_pa(scheme: CodingScheme = FULL) -> Theory:
    """First-order arithmetic: successor, +, *, <= axioms plus full induction."""
    return make_theory("PA", [parse_formula(t) for t in _PA_AXIOM_TEXT],
                       induction=True, scheme=scheme)


def mk_finite_theory(name: str, axioms: Sequence[Formula],
                     scheme: CodingScheme = FULL) -> Theory:
    """A finitely axiomatized theory; its axiom-code formula is quantifier-free."""
    return make_theory(name, axioms, induction=False, scheme=scheme)


def extend(theory: Theory, sentence: Formula) -> Theory:
    """theory plus one closed axiom, recognized by its (symbolic) code.

    The new code disjunct keeps the sentence's numeral symbolic, so extension
    never pays for materializing astronomically large codes.
    """
    if free_vars(sentence):
        raise ValueError("can only extend by a sentence")
    scheme = theory.scheme
    axioms_formula = Or(theory.axioms_formula,
                        Eq(Var(0), CodeNumeral(sentence, scheme)))
    k = len(witness_exists_paths(theory.axioms_formula))
    try:
        sentence_code: Optional[int] = scheme.formula_code(sentence)
    except CodeOverflowError:
        sentence_code = None  # no feasible argument can ever match it

    def recognizer(f: Formula) -> bool:
        return formulas_equal(f, sentence) or theory.is_axiom(f)

    def axiom_witnesses(code: int) -> tuple[int, ...]:
        if sentence_code is not None and code == sentence_code:
            return (0,) * k
        return theory.axiom_witnesses(code)

    return Theory(
        name=f"{theory.name}+1",
        scheme=scheme,
        base_axioms=theory.base_axioms + (sentence,),
        induction=theory.induction,
        meta_axiom_recognizer=recognizer,
        axioms_formula=axioms_formula,
        presentation=theory.presentation,
        axiom_witnesses=axiom_witnesses,
    )


# ---------------------------------------------------------------------------
# Theory files
# ---------------------------------------------------------------------------


def parse_theory(text: str) -> Theory:
    """Parse the line-oriented theory format (see format_theory)."""
    name = "theory"
    scheme = FULL
    induction = False
    axioms: list[Formula] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if not sep or not value:
            raise ValueError(f"line {lineno}: expected 'key: value'")
        if key == "name":
            name = value
        elif key == "scheme":
            from .coding import SCHEMES
            if value not in SCHEMES:
                raise ValueError(f"line {lineno}: unknown scheme {value!r}")
            scheme = SCHEMES[value]
        elif key == "induction":
            if value not in ("on", "off"):
                raise ValueError(f"line {lineno}: induction must be on or off")
            induction = value == "on"
        elif key == "axiom":
            try:
                axioms.append(parse_formula(value))
            except Exception as exc:
                raise ValueError(f"line {lineno}: {exc}") from exc
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    return make_theory(name, axioms, induction, scheme)


def format_theory(theory: Theory) -> str:
    """Render a theory in the file format parse_theory reads."""
    lines = [f"name: {theory.name}",
             f"scheme: {theory.scheme.name}",
             f"induction: {'on' if theory.induction else 'off'}"]
    lines += [f"axiom: {print_formula(ax)}" for ax in theory.base_axioms]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Provability
# ---------------------------------------------------------------------------


def hoist_exists(f: Formula) -> tuple[tuple[int, ...], Formula]:
    """Strip the hoistable existential prefix, returning (variables, matrix).

    Handles the shapes theory builders produce: a plain existential prefix,
    possibly sitting on either side of disjunctions.  Binder names are kept,
    so hoisting through a disjunction demands they stay disjoint from the
    other side.
    """
    if isinstance(f, Exists) and match_bounded(f) is None:
        inner, matrix = hoist_exists(f.body)
        return (f.var,) + inner, matrix
    if isinstance(f, Or):
        lv, lm = hoist_exists(f.left)
        rv, rm = hoist_exists(f.right)
        if not lv and not rv:
            return (), f
        if set(lv) & (free_vars(rm) | set(rv)) or set(rv) & free_vars(lm):
            raise ValueError("cannot hoist: existential variables collide across Or")
        return lv + rv, Or(lm, rm)
    return (), f


def _rename_bound(f: Formula, fb: _FB) -> Formula:
    """Rename every bound variable of f to a fresh index from fb."""
    if isinstance(f, (Eq, Le)):
        return f
    if isinstance(f, Not):
        return Not(_rename_bound(f.body, fb))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(_rename_bound(f.left, fb), _rename_bound(f.right, fb))
    assert isinstance(f, (ForAll, Exists))
    w = fb.fresh()
    body = substitute(f.body, f.var, Var(w))
    return type(f)(w, _rename_bound(body, fb))


def _logical_axiom_cases(fb: _FB, scheme: CodingScheme, e: Term, cell: Term) -> Formula:
    """e codes an instance of one of the thirteen logical axiom shapes.

    Well-formedness of the pieces is inherited from e's membership in the
    step-formula syntax table, so the shape checks are pure decomposition.
    The certificate cell is consulted only by the universal-instantiation
    shape, which needs a closed-term table and a substitution table.
    """
    def imp(z, mk):
        return _dest2(fb, scheme, "imp", z, mk)

    def eq(z, mk):
        return _dest2(fb, scheme, "eq", z, mk)

    def p1():
        return imp(e, lambda A, r: imp(r, lambda B, A2: Eq(A2, A)))

    def p2():
        return imp(e, lambda l, r: imp(
            l, lambda A, bc: imp(bc, lambda B, C: imp(
                r, lambda ab, ac: imp(ab, lambda A2, B2: imp(
                    ac, lambda A3, C2: _conj(
                        [Eq(A2, A), Eq(B2, B), Eq(A3, A), Eq(C2, C)])))))))

    def p3():
        return imp(e, lambda l, r: imp(
            l, lambda na, nb: _dest1(fb, scheme, "not", na, lambda A: _dest1(
                fb, scheme, "not", nb, lambda B: imp(
                    r, lambda B2, A2: And(Eq(B2, B), Eq(A2, A)))))))

    def q1():
        def with_cell(ct: Term, tabs: Term) -> Formula:
            def with_tabs(ctab: Term, stab: Term) -> Formula:
                closed_ok = _split_seq(
                    fb, ctab,
                    lambda a, b, m: And(_valid_closed_term_table(fb, scheme, a, b, m),
                                        _member(fb, a, b, m, ct)))

                def sub_ok(v: Term, A: Term, B: Term) -> Formula:
                    return _split_seq(
                        fb, stab,
                        lambda a, b, m: And(_valid_sub_table(fb, scheme, a, b, m, v, ct),
                                            _member_pair(fb, a, b, m, A, B)))

                return imp(e, lambda fa, B: _dest2(
                    fb, scheme, "forall", fa,
                    lambda v, A: And(closed_ok, sub_ok(v, A, B))))

            return _split_pair(fb, tabs, with_tabs)

        return _split_pair(fb, cell, with_cell)

    def q2():
        return imp(e, lambda l, r: _dest2(
            fb, scheme, "forall", l, lambda v, ab: imp(
                ab, lambda A, B: imp(r, lambda fa, fb2: _dest2(
                    fb, scheme, "forall", fa, lambda v2, A2: _dest2(
                        fb, scheme, "forall", fb2, lambda v3, B2: _conj(
                            [Eq(v2, v), Eq(v3, v), Eq(A2, A), Eq(B2, B)])))))))

    def e1():
        return eq(e, lambda t1, t2: Eq(t1, t2))

    def e2():
        return imp(e, lambda l, r: eq(l, lambda t, s: eq(
            r, lambda s2, t2: And(Eq(s2, s), Eq(t2, t)))))

    def e3():
        return imp(e, lambda l, r: eq(l, lambda t, s: imp(
            r, lambda m, c: eq(m, lambda s2, u: eq(
                c, lambda t2, u2: _conj([Eq(s2, s), Eq(t2, t), Eq(u2, u)]))))))

    def e4():
        return imp(e, lambda l, r: eq(l, lambda t, s: eq(
            r, lambda st, ss: _dest1(fb, scheme, "succ", st, lambda t2: _dest1(
                fb, scheme, "succ", ss, lambda s2: And(Eq(t2, t), Eq(s2, s)))))))

    def congruence(op_key: str):
        return imp(e, lambda l, r: eq(l, lambda t1, s1: imp(
            r, lambda m, c: eq(m, lambda t2, s2: eq(
                c, lambda lhs, rhs: _dest2(
                    fb, scheme, op_key, lhs, lambda a1, a2: _dest2(
                        fb, scheme, op_key, rhs, lambda b1, b2: _conj(
                            [Eq(a1, t1), Eq(a2, t2), Eq(b1, s1), Eq(b2, s2)]))))))))

    def e7():
        le = lambda z, mk: _dest2(fb, scheme, "le", z, mk)
        return imp(e, lambda l, r: eq(l, lambda t1, s1: imp(
            r, lambda m, c: eq(m, lambda t2, s2: imp(
                c, lambda le1, le2: le(le1, lambda u1, u2: le(
                    le2, lambda w1, w2: _conj(
                        [Eq(u1, t1), Eq(u2, t2), Eq(w1, s1), Eq(w2, s2)]))))))))

    return _disj([p1(), p2(), p3(), q1(), q2(), e1(), e2(), e3(), e4(),
                  congruence("add"), congruence("mul"), e7()])


def _theory_axiom_case(fb: _FB, e: Term, cell: Term,
                       matrix: Formula, ws: tuple[int, ...]) -> Formula:
    """e satisfies the theory's axiom-code formula, witnesses read from cell."""
    def ground(values: Sequence[Term]) -> Formula:
        env: dict[int, Term] = {0: e}
        env.update(dict(zip(ws, values)))
        return substitute_many(matrix, env)

    k = len(ws)
    if k == 0:
        return ground([])
    if k == 1:
        return ground([cell])

    def unpack(rest: Term, acc: list[Term], remaining: int) -> Formula:
        if remaining == 1:
            return ground(acc + [rest])
        return _split_pair(fb, rest, lambda h, t2: unpack(t2, acc + [h], remaining - 1))

    return unpack(cell, [], k)


def mk_prf(theory: Theory) -> ArithmetizedPredicate:
    """Prf(y, x): y codes a proof in the theory whose last step codes x.

    The three existentials are certificate tables: a syntax table covering
    every step formula, then per-step cells for the universal-instantiation
    certificates and for the theory-axiom witnesses.  Everything below them
    is bounded, so the predicate evaluates by table checking, not search.
    """
    scheme = theory.scheme
    fb = _FB(2)
    y, x = Var(0), Var(1)
    ws, matrix = hoist_exists(theory.axioms_formula)
    matrix = _rename_bound(matrix, fb)
    tab_f, tab_l, tab_x = fb.fresh(), fb.fresh(), fb.fresh()
    tag_imp = Num(scheme.tag("imp"))

    def with_proof(ay: Term, by: Term, n: Term) -> Formula:
        last_is_x = _bexists(
            fb, n, lambda i0: And(Eq(Succ(i0), n),
                                  _elem(fb, ay, by, i0, lambda ev: Eq(ev, x))))

        def with_f(af: Term, bf: Term, mf: Term) -> Formula:
            def with_l(al: Term, bl: Term, nl: Term) -> Formula:
                def with_x(ax: Term, bx: Term, nx: Term) -> Formula:
                    def step(i: Term) -> Formula:
                        def with_e(e: Term) -> Formula:
                            def with_cells(cl: Term, cx: Term) -> Formula:
                                mp = _bexists_lt(fb, i, lambda j: _bexists_lt(
                                    fb, i, lambda kk: _elem(fb, ay, by, j, lambda ej: _elem(
                                        fb, ay, by, kk, lambda ek: _bind_pair(
                                            fb, ek, e,
                                            lambda d: _pair_eq(ej, tag_imp, d))))))
                                gen = _dest2(
                                    fb, scheme, "forall", e,
                                    lambda _w, body: _bexists_lt(
                                        fb, i, lambda j: _elem(fb, ay, by, j,
                                                               lambda ej: Eq(ej, body))))
                                return _conj([
                                    _member_pair(fb, af, bf, mf, e, Num(1)),
                                    _disj([
                                        _logical_axiom_cases(fb, scheme, e, cl),
                                        _theory_axiom_case(fb, e, cx, matrix, ws),
                                        mp,
                                        gen,
                                    ]),
                                ])

                            return _elem(fb, al, bl, i,
                                         lambda cl: _elem(fb, ax, bx, i,
                                                          lambda cx: with_cells(cl, cx)))

                        return _elem(fb, ay, by, i, with_e)

                    return _conj([
                        Eq(nl, n),
                        Eq(nx, n),
                        _valid_syntax_table(fb, scheme, af, bf, mf),
                        _bforall_lt(fb, n, step),
                    ])

                return _split_seq(fb, Var(tab_x), with_x)

            return _split_seq(fb, Var(tab_l), with_l)

        return _conj([Le(Num(1), n), last_is_x, _split_seq(fb, Var(tab_f), with_f)])

    formula = Exists(tab_f, Exists(tab_l, Exists(tab_x, _split_seq(fb, y, with_proof))))

    def witnesses(yv: int, xv: int) -> tuple[int, ...]:
        proof = decode_proof(theory, yv, scheme)
        if proof is None:
            return (0, 0, 0)
        steps = proof_steps(theory, proof)
        if scheme.formula_code(steps[-1]) != xv:
            return (0, 0, 0)
        table_f = seq_encode(_syntax_rows([(f, 1) for f in steps], scheme))
        cells_l: list[int] = []
        cells_x: list[int] = []
        for st, f in zip(proof, steps):
            cl = cx = 0
            if isinstance(st, LogicalAxiom) and st.schema == "Q1":
                _v, body, t = st.args
                sub = seq_encode(_sub_rows(body, _v, t, scheme))
                closed = seq_encode(_closed_term_rows(t, scheme))
                cl = pair(scheme.term_code(t), pair(closed, sub))
            elif isinstance(st, TheoryAxiom):
                cx = _pack_cell(theory.axiom_witnesses(scheme.formula_code(f)))
            cells_l.append(cl)
            cells_x.append(cx)
        return (table_f, seq_encode(cells_l), seq_encode(cells_x))

    return ArithmetizedPredicate(
        name=f"Prf_{theory.name}",
        formula=formula,
        free_var_roles=("proof code", "conclusion code"),
        declared_class=sigma(1),
        justification="proof checking is decidable; the tables certify both "
                      "the step formulas and the per-step schema instances",
        scheme=scheme,
        witness_paths=witness_exists_paths(formula),
        witnesses=witnesses,
    )


def mk_prov(theory: Theory) -> ArithmetizedPredicate:
    """Prov(x): some y proves x.  Genuinely Sigma(1); carries no witnesses."""
    prf = mk_prf(theory)
    u = max_index(prf.formula) + 1
    shifted = substitute_many(prf.formula, {0: Var(u), 1: Var(0)})
    formula = Exists(u, shifted)
    return ArithmetizedPredicate(
        name=f"Prov_{theory.name}",
        formula=formula,
        free_var_roles=("formula code",),
        declared_class=sigma(1),
        justification="the proof existential cannot be bounded or witnessed "
                      "uniformly; this one is the real thing",
        scheme=theory.scheme,
        witness_paths=witness_exists_paths(formula),
        witnesses=None,
        core_paths=((0,),),  # the Prf matrix under the proof existential
    )


CON_CORE_PATH = (0, 0)
"""Path of the decidable Prf core inside a consistency sentence."""


def mk_con(theory: Theory) -> Formula:
    """Con(T): no proof code derives the code of 0 = S(0).

    The result is Not(Exists u, Prf(u, target)); annotate the subtree at
    CON_CORE_PATH as Delta0 to classify it as the Pi(1) sentence it is.
    """
    prov = mk_prov(theory)
    target = theory.scheme.formula_code(Eq(ZERO, Succ(ZERO)))
    return Not(substitute(prov.formula, 0, Num(target)))


def mk_axioms_predicate(theory: Theory) -> ArithmetizedPredicate:
    """The theory's axiom-code formula packaged as a decidable predicate."""
    return ArithmetizedPredicate(
        name=f"Axioms_{theory.name}",
        formula=theory.axioms_formula,
        free_var_roles=("formula code",),
        declared_class=theory.presentation,
        justification="axiomhood is decidable; scheme instances carry their "
                      "substitution tables as witnesses",
        scheme=theory.scheme,
        witness_paths=witness_exists_paths(theory.axioms_formula),
        witnesses=theory.axiom_witnesses,
    )
