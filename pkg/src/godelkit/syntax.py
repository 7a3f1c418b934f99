"""Terms and formulas of first-order arithmetic.

The language has function symbols 0, S, +, * and relation symbols =, <=.
Variables are indexed (v0, v1, ...).  Two extra term constructors exist for
scale reasons and denote ordinary terms:

* ``Num(n)`` stands for the binary numeral of ``n``.  It is atomic for
  structural operations, prints as a decimal literal, and its Godel code is
  the code of its expansion, so nothing downstream can tell it apart from
  the expanded tree except by node count.
* ``CodeNumeral(f, scheme)`` stands for the binary numeral of the code of
  formula ``f`` under ``scheme``.  The integer is only materialized on
  demand because such codes routinely overflow any reasonable bit budget.

Structural helpers that may meet million-node numeral chains (printing,
evaluation, substitution, free variables) are iterative; plain recursion is
reserved for formula-level logic, whose nesting stays shallow.
"""

from __future__ import annotations

import re
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union


class ParseError(ValueError):
    """Raised when a term or formula string does not match the grammar."""


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class Succ(Term):
    arg: Term


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Num(Term):
    """Compressed binary numeral with value ``value`` (see module docstring)."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("Num takes a natural number")


@dataclass(frozen=True)
class CodeNumeral(Term):
    """Numeral of ``scheme.formula_code(formula)``, kept symbolic until needed.

    ``scheme`` is any object with a ``formula_code`` method; the coding module
    supplies it.  Structural operations treat this node as a closed leaf.
    """

    formula: "Formula"
    scheme: object


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Le(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    var: int
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: int
    body: Formula


_BINARY_TERMS = (Add, Mul)
_ATOMS = (Eq, Le)
_BINARY_FORMULAS = (And, Or, Imp)
_QUANTIFIERS = (ForAll, Exists)

ZERO = Zero()
ONE = Succ(ZERO)
TWO = Succ(ONE)


def _term_children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Succ):
        return (t.arg,)
    if isinstance(t, _BINARY_TERMS):
        return (t.left, t.right)
    return ()


def _formula_parts(f: Formula) -> tuple[tuple[Term, ...], tuple[Formula, ...]]:
    """Immediate term children and formula children of ``f``."""
    if isinstance(f, _ATOMS):
        return (f.left, f.right), ()
    if isinstance(f, Not):
        return (), (f.body,)
    if isinstance(f, _BINARY_FORMULAS):
        return (), (f.left, f.right)
    if isinstance(f, _QUANTIFIERS):
        return (), (f.body,)
    raise TypeError(f"not a formula: {f!r}")


def subformula_at(f: Formula, path: tuple[int, ...]) -> Formula:
    """The subformula reached by following child indices in ``path``.

    Child numbering: Not and quantifiers have one child (index 0); And, Or
    and Imp have children 0 and 1.  Atoms have none.
    """
    node = f
    for i in path:
        _, kids = _formula_parts(node)
        if i >= len(kids):
            raise IndexError(f"no child {i} at {type(node).__name__}")
        node = kids[i]
    return node


# ---------------------------------------------------------------------------
# Numerals
# ---------------------------------------------------------------------------

def numeral(n: int, style: str = "binary") -> Term:
    """The canonical numeral term for ``n`` as an expanded tree.

    ``binary`` style uses the doubling form (node count O(log n)):
    0 -> 0, 1 -> S(0), 2k -> (SS0 * numeral(k)), 2k+1 -> ((SS0 * numeral(k)) + S(0)).
    ``unary`` style is the S-chain (node count n + 1).
    """
    if n < 0:
        raise ValueError("numeral takes a natural number")
    if style == "unary":
        t: Term = ZERO
        for _ in range(n):
            t = Succ(t)
        return t
    if style != "binary":
        raise ValueError(f"unknown numeral style: {style}")
    return _binary_numeral(n)


def _binary_numeral(n: int) -> Term:
    if n == 0:
        return ZERO
    if n == 1:
        return ONE
    half = _binary_numeral(n >> 1)
    doubled = Mul(TWO, half)
    return doubled if n % 2 == 0 else Add(doubled, ONE)


def unfold_num(n: int) -> Term:
    """One-level expansion of ``Num(n)``, with ``Num`` children below."""
    if n == 0:
        return ZERO
    if n == 1:
        return ONE
    doubled = Mul(TWO, Num(n >> 1))
    return doubled if n % 2 == 0 else Add(doubled, ONE)


# ---------------------------------------------------------------------------
# Structural equality bridging Num with expanded trees
# ---------------------------------------------------------------------------

def terms_equal(s: Term, t: Term) -> bool:
    """Equality of terms as syntax, unfolding Num/CodeNumeral on demand.

    Num(n) equals exactly the binary-style numeral tree of n (and other
    Num(n)); unary numerals of the same value are different terms.
    """
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        if a is b:
            continue
        if isinstance(a, CodeNumeral) and isinstance(b, CodeNumeral) and a.scheme is b.scheme:
            # codes are injective per scheme, so compare without encoding
            if formulas_equal(a.formula, b.formula):
                continue
            return False
        if isinstance(a, CodeNumeral):
            a = Num(a.scheme.formula_code(a.formula))
        if isinstance(b, CodeNumeral):
            b = Num(b.scheme.formula_code(b.formula))
        if isinstance(a, Num) and isinstance(b, Num):
            if a.value != b.value:
                return False
            continue
        if isinstance(a, Num):
            a = unfold_num(a.value)
        if isinstance(b, Num):
            b = unfold_num(b.value)
        if type(a) is not type(b):
            return False
        if isinstance(a, Var):
            if a.index != b.index:
                return False
            continue
        stack.extend(zip(_term_children(a), _term_children(b)))
    return True


def formulas_equal(f: Formula, g: Formula) -> bool:
    """Structural formula equality, delegating to terms_equal on atoms.

    Bound variables are compared by index; use alpha_normalize first for
    equality up to renaming.
    """
    stack = [(f, g)]
    while stack:
        a, b = stack.pop()
        if a is b:
            continue
        if type(a) is not type(b):
            return False
        if isinstance(a, _ATOMS):
            if not (terms_equal(a.left, b.left) and terms_equal(a.right, b.right)):
                return False
            continue
        if isinstance(a, _QUANTIFIERS) and a.var != b.var:
            return False
        _, ka = _formula_parts(a)
        _, kb = _formula_parts(b)
        stack.extend(zip(ka, kb))
    return True


# ---------------------------------------------------------------------------
# Variables
# ---------------------------------------------------------------------------

def _walk_nodes(obj: Union[Term, Formula]) -> Iterable[Union[Term, Formula]]:
    stack = [obj]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Term):
            stack.extend(_term_children(node))
        else:
            terms, kids = _formula_parts(node)
            stack.extend(terms)
            stack.extend(kids)


def free_vars(obj: Union[Term, Formula]) -> frozenset[int]:
    """Indices of variables occurring free."""
    out: set[int] = set()
    stack: list[tuple[Union[Term, Formula], frozenset[int]]] = [(obj, frozenset())]
    while stack:
        node, bound = stack.pop()
        if isinstance(node, Var):
            if node.index not in bound:
                out.add(node.index)
        elif isinstance(node, Term):
            stack.extend((c, bound) for c in _term_children(node))
        elif isinstance(node, _QUANTIFIERS):
            stack.append((node.body, bound | {node.var}))
        else:
            terms, kids = _formula_parts(node)
            stack.extend((c, bound) for c in terms)
            stack.extend((c, bound) for c in kids)
    return frozenset(out)


def max_index(obj: Union[Term, Formula]) -> int:
    """Largest variable index occurring at all (bound or free); -1 if none."""
    best = -1
    for node in _walk_nodes(obj):
        if isinstance(node, Var):
            best = max(best, node.index)
        elif isinstance(node, _QUANTIFIERS):
            best = max(best, node.var)
    return best


def fresh_var(*objs: Union[Term, Formula, int]) -> int:
    """An index strictly above every index occurring in the arguments."""
    best = -1
    for o in objs:
        best = max(best, o if isinstance(o, int) else max_index(o))
    return best + 1


def is_closed(obj: Union[Term, Formula]) -> bool:
    return not free_vars(obj)


def term_has_var(t: Term, var: int) -> bool:
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            if node.index == var:
                return True
        else:
            stack.extend(_term_children(node))
    return False


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

def substitute_term(t: Term, env: Mapping[int, Term]) -> Term:
    """Simultaneous substitution of terms for variables inside a term."""
    if not env:
        return t
    # Post-order rebuild with an explicit stack; shares untouched subtrees.
    done: dict[int, Term] = {}

    def built(node: Term) -> Term:
        return done.get(id(node), node)

    stack: list[tuple[Term, bool]] = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            if isinstance(node, Succ):
                arg = built(node.arg)
                if arg is not node.arg:
                    done[id(node)] = Succ(arg)
            else:
                left, right = built(node.left), built(node.right)
                if left is not node.left or right is not node.right:
                    done[id(node)] = type(node)(left, right)
            continue
        if isinstance(node, Var):
            if node.index in env:
                done[id(node)] = env[node.index]
        elif isinstance(node, (Succ, Add, Mul)):
            stack.append((node, True))
            stack.extend((c, False) for c in _term_children(node))
    return built(t)


def substitute(f: Formula, var: int, replacement: Term) -> Formula:
    return substitute_many(f, {var: replacement})


def _subtree_free_vars(f: Formula) -> dict[int, frozenset[int]]:
    """Free variables of every formula node of f, keyed by object id."""
    out: dict[int, frozenset[int]] = {}
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            if isinstance(node, Not):
                out[id(node)] = out[id(node.body)]
            elif isinstance(node, _BINARY_FORMULAS):
                out[id(node)] = out[id(node.left)] | out[id(node.right)]
            else:
                out[id(node)] = out[id(node.body)] - frozenset((node.var,))
            continue
        if id(node) in out:
            continue
        if isinstance(node, _ATOMS):
            out[id(node)] = free_vars(node.left) | free_vars(node.right)
            continue
        stack.append((node, True))
        if isinstance(node, _BINARY_FORMULAS):
            stack.append((node.left, False))
            stack.append((node.right, False))
        else:
            stack.append((node.body, False))
    return out


def substitute_many(f: Formula, env: Mapping[int, Term]) -> Formula:
    """Capture-avoiding simultaneous substitution of terms for free variables.

    When a binder would capture a variable of an incoming term, the bound
    variable is renamed to 1 + the largest index in scope (binder body,
    incoming terms, binder and substituted indices), which makes the result
    deterministic.
    """
    if not env:
        return f
    return _substitute_many(f, env, _subtree_free_vars(f))


def _substitute_many(
    f: Formula, env: Mapping[int, Term], fvs: Mapping[int, frozenset[int]]
) -> Formula:
    live = {v: t for v, t in env.items() if v in fvs[id(f)]}
    if not live:
        return f
    if isinstance(f, _ATOMS):
        return type(f)(substitute_term(f.left, live), substitute_term(f.right, live))
    if isinstance(f, Not):
        return Not(_substitute_many(f.body, live, fvs))
    if isinstance(f, _BINARY_FORMULAS):
        return type(f)(
            _substitute_many(f.left, live, fvs), _substitute_many(f.right, live, fvs)
        )
    assert isinstance(f, _QUANTIFIERS)
    live.pop(f.var, None)
    if not live:
        return f
    body, bound = f.body, f.var
    if any(term_has_var(t, bound) for t in live.values()):
        top = max(
            max_index(body),
            bound,
            max(live),
            max(max_index(t) for t in live.values()),
        )
        fresh = top + 1
        body = substitute_many(body, {bound: Var(fresh)})
        bound = fresh
        return type(f)(bound, substitute_many(body, live))
    return type(f)(bound, _substitute_many(body, live, fvs))


def alpha_normalize(f: Formula) -> Formula:
    """Rename bound variables canonically.

    Binders get consecutive indices in pre-order starting just above the
    free variables, so alpha-equivalent formulas normalize identically.
    """
    base = max(free_vars(f), default=-1) + 1
    counter = [base]

    def rec(g: Formula, env: Mapping[int, int]) -> Formula:
        if isinstance(g, _ATOMS):
            sub = {v: Var(i) for v, i in env.items()}
            return type(g)(substitute_term(g.left, sub), substitute_term(g.right, sub))
        if isinstance(g, Not):
            return Not(rec(g.body, env))
        if isinstance(g, _BINARY_FORMULAS):
            return type(g)(rec(g.left, env), rec(g.right, env))
        assert isinstance(g, _QUANTIFIERS)
        new = counter[0]
        counter[0] += 1
        return type(g)(new, rec(g.body, {**env, g.var: new}))

    return rec(f, {})


def alpha_equal(f: Formula, g: Formula) -> bool:
    return formulas_equal(alpha_normalize(f), alpha_normalize(g))


# ---------------------------------------------------------------------------
# Bounded-quantifier shapes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundedShape:
    """A quantifier of the form A v.(v <= t -> A) or E v.(v <= t & A), v not in t."""

    kind: str  # "forall" | "exists"
    var: int
    bound: Term
    body: Formula


def match_bounded(f: Formula) -> Optional[BoundedShape]:
    if isinstance(f, ForAll) and isinstance(f.body, Imp):
        guard, body = f.body.left, f.body.right
        kind = "forall"
    elif isinstance(f, Exists) and isinstance(f.body, And):
        guard, body = f.body.left, f.body.right
        kind = "exists"
    else:
        return None
    if not (isinstance(guard, Le) and guard.left == Var(f.var)):
        return None
    if term_has_var(guard.right, f.var):
        return None
    return BoundedShape(kind, f.var, guard.right, body)


def bounded_forall(var: int, bound: Term, body: Formula) -> Formula:
    return ForAll(var, Imp(Le(Var(var), bound), body))


def bounded_exists(var: int, bound: Term, body: Formula) -> Formula:
    return Exists(var, And(Le(Var(var), bound), body))


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def print_term(t: Term) -> str:
    out: list[str] = []
    _emit(out, t)
    return "".join(out)


def print_formula(f: Formula) -> str:
    out: list[str] = []
    _emit(out, f)
    return "".join(out)


def _emit(out: list[str], root: Union[Term, Formula]) -> None:
    # Explicit stack: strings and nodes interleave.  A CodeNumeral prints as
    # '#<scheme>{<formula>}' rather than its decimal value, which may not fit
    # in memory; the parser accepts the same notation back.
    stack: list[Union[str, Term, Formula]] = [root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        if isinstance(item, Zero):
            out.append("0")
        elif isinstance(item, Var):
            out.append(f"v{item.index}")
        elif isinstance(item, Num):
            out.append(str(item.value))
        elif isinstance(item, CodeNumeral):
            out.append(f"#{item.scheme.name}{{")
            stack.append("}")
            stack.append(item.formula)
        elif isinstance(item, Succ):
            out.append("S(")
            stack.append(")")
            stack.append(item.arg)
        elif isinstance(item, _BINARY_TERMS):
            out.append("(")
            stack.append(")")
            stack.append(item.right)
            stack.append(" + " if isinstance(item, Add) else " * ")
            stack.append(item.left)
        elif isinstance(item, _ATOMS):
            stack.append(item.right)
            stack.append(" = " if isinstance(item, Eq) else " <= ")
            stack.append(item.left)
        elif isinstance(item, Not):
            out.append("~")
            if isinstance(item.body, _ATOMS):
                out.append("(")
                stack.append(")")
            stack.append(item.body)
        elif isinstance(item, _BINARY_FORMULAS):
            op = {And: " & ", Or: " | ", Imp: " -> "}[type(item)]
            out.append("(")
            stack.append(")")
            stack.append(item.right)
            stack.append(op)
            stack.append(item.left)
        else:
            assert isinstance(item, _QUANTIFIERS)
            out.append("A" if isinstance(item, ForAll) else "E")
            out.append(f" v{item.var} . ")
            stack.append(item.body)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<le><=)|(?P<imp>->)|(?P<var>v[0-9]+)|(?P<nat>[0-9]+)"
    r"|(?P<codelit>#[a-z]+\{)|(?P<sym>[()+*=~&|.SAE}]))"
)


def _tokenize(text: str) -> tuple[list[str], list[int]]:
    tokens: list[str] = []
    offsets: list[int] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(
                    f"bad character at position {pos}: {text[pos:pos + 10]!r}"
                )
            break
        tokens.append(m.group(m.lastgroup))
        offsets.append(m.start(m.lastgroup))
        pos = m.end()
    return tokens, offsets


class _Parser:
    """Recursive-descent parser for the concrete grammar.

    term    := '0' | NAT | VAR | 'S' '(' term ')' | '(' term ('+'|'*') term ')'
    atom    := term ('='|'<=') term
    formula := atom | '~' formula | ('A'|'E') VAR '.' formula
             | '(' formula ('&'|'|'|'->') formula ')' | '(' formula ')'
    Decimal literals other than 0 parse to Num; 0 parses to Zero.
    """

    def __init__(self, tokens: list[str], offsets: list[int], end: int):
        self.tokens = tokens
        self.offsets = offsets
        self.end = end
        self.pos = 0

    def at(self, idx: Optional[int] = None) -> str:
        i = self.pos if idx is None else idx
        off = self.offsets[i] if i < len(self.offsets) else self.end
        return f"position {off}"

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input at {self.at()}")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r} at {self.at()}, got {tok!r}")
        self.pos += 1
        return tok

    def term(self) -> Term:
        tok = self.take()
        if tok == "0":
            return ZERO
        if tok.isdigit():
            return Num(int(tok))
        if tok.startswith("v"):
            return Var(int(tok[1:]))
        if tok.startswith("#"):
            from .coding import SCHEMES
            name = tok[1:-1]
            if name not in SCHEMES:
                raise ParseError(
                    f"unknown scheme in code literal at {self.at(self.pos - 1)}: "
                    f"{name!r}"
                )
            inner = self.formula()
            self.take("}")
            return CodeNumeral(inner, SCHEMES[name])
        if tok == "S":
            self.take("(")
            arg = self.term()
            self.take(")")
            return Succ(arg)
        if tok == "(":
            left = self.term()
            op = self.take()
            if op not in ("+", "*"):
                raise ParseError(f"expected + or * in term at {self.at(self.pos - 1)}, got {op!r}")
            right = self.term()
            self.take(")")
            return Add(left, right) if op == "+" else Mul(left, right)
        raise ParseError(f"unexpected token in term at {self.at(self.pos - 1)}: {tok!r}")

    def atom(self) -> Formula:
        left = self.term()
        op = self.take()
        if op == "=":
            return Eq(left, self.term())
        if op == "<=":
            return Le(left, self.term())
        raise ParseError(f"expected = or <= after term at {self.at(self.pos - 1)}, got {op!r}")

    def formula(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.formula())
        if tok in ("A", "E"):
            self.take()
            var = self.take()
            if not var.startswith("v"):
                raise ParseError(f"expected variable after quantifier at {self.at(self.pos - 1)}, got {var!r}")
            self.take(".")
            body = self.formula()
            cls = ForAll if tok == "A" else Exists
            return cls(int(var[1:]), body)
        if tok == "(":
            # Could open a compound formula, a redundantly parenthesized
            # formula, or a parenthesized term inside an atom.  Backtrack.
            saved = self.pos
            self.take()
            try:
                left = self.formula()
            except ParseError:
                self.pos = saved
                return self.atom()
            nxt = self.peek()
            if nxt in ("&", "|", "->"):
                self.take()
                right = self.formula()
                self.take(")")
                cls = {"&": And, "|": Or, "->": Imp}[nxt]
                return cls(left, right)
            if nxt == ")":
                self.take()
                return left
            self.pos = saved
            return self.atom()
        return self.atom()


@contextmanager
def _recursion_headroom(tokens: list[str]):
    # The parser recurses a few frames per nesting level; token count bounds
    # the nesting.  Deeply nested inputs (printed towers of code literals)
    # otherwise hit the default limit.
    need = min(4 * len(tokens) + 100, 120_000)
    limit = sys.getrecursionlimit()
    if need <= limit:
        yield
        return
    sys.setrecursionlimit(need)
    try:
        yield
    finally:
        sys.setrecursionlimit(limit)


def parse_term(text: str) -> Term:
    tokens, offsets = _tokenize(text)
    p = _Parser(tokens, offsets, len(text))
    with _recursion_headroom(tokens):
        t = p.term()
    if p.peek() is not None:
        raise ParseError(f"trailing input at {p.at()}: {p.peek()!r}")
    return t


def parse_formula(text: str) -> Formula:
    tokens, offsets = _tokenize(text)
    p = _Parser(tokens, offsets, len(text))
    with _recursion_headroom(tokens):
        f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"trailing input at {p.at()}: {p.peek()!r}")
    return f


# ---------------------------------------------------------------------------
# Size accounting
# ---------------------------------------------------------------------------

def node_count(obj: Union[Term, Formula]) -> int:
    """Number of AST nodes; Num and CodeNumeral count as single nodes."""
    n = 0
    for _ in _walk_nodes(obj):
        n += 1
    return n


def depth(obj: Union[Term, Formula]) -> int:
    """Height of the AST (a leaf has depth 0); Num/CodeNumeral are leaves."""
    best = 0
    stack: list[tuple[Union[Term, Formula], int]] = [(obj, 0)]
    while stack:
        node, d = stack.pop()
        best = max(best, d)
        if isinstance(node, Term):
            stack.extend((c, d + 1) for c in _term_children(node))
        else:
            terms, kids = _formula_parts(node)
            stack.extend((c, d + 1) for c in terms)
            stack.extend((c, d + 1) for c in kids)
    return best
