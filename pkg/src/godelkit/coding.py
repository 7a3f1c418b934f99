"""Godel numbering of terms, formulas and finite sequences.

Trees are coded with the Cantor pair: a node is pair(tag, payload) where the
payload is 0 for the zero constant, the variable index for variables,
pair(child, 0) for unary symbols, pair(left, right) for binary symbols, and
pair(var_index, body) for quantifiers.

Two tag assignments ship.  FULL is the reference assignment; MICRO reorders
tags so that the smallest interesting codes (0 = 0 and its one-line proofs)
fall inside exhaustive-sweep range.  Nothing else differs between schemes.

Code sizes explode with tree depth: bits(code) roughly quadruples per
numeral-doubling level, so the code of numeral(n) needs on the order of n**2
bits.  Every encoding entry point therefore takes a bit budget and raises
CodeOverflowError, with a cheap size estimate attached, instead of
attempting a hopeless computation.

Finite sequences use the beta function: a pair (a, b) represents the
sequence whose i-th element is a mod (1 + (i+1)*b).  seq_encode produces the
canonical witness (b = lcm(1..n) * (1 + max), least a via CRT), but any
(a, b) with the right residues decodes to the same sequence, and consumers
accept all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

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
    Zero,
)

DEFAULT_BIT_LIMIT = 2_000_000

# Estimates saturate here; anything this size is far beyond every budget.
_BITS_CAP = 1 << 62


class CodeOverflowError(OverflowError):
    """The requested code does not fit in the bit budget."""

    def __init__(self, estimated_bits: int, limit: int):
        self.estimated_bits = estimated_bits
        self.limit = limit
        shown = ">=2**62" if estimated_bits >= _BITS_CAP else str(estimated_bits)
        super().__init__(f"code needs ~{shown} bits, over the {limit}-bit budget")


class DecodeError(ValueError):
    """The integer is not a well-formed term or formula code."""


# ---------------------------------------------------------------------------
# Cantor pairing
# ---------------------------------------------------------------------------

def pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(c: int) -> tuple[int, int]:
    s = (math.isqrt(8 * c + 1) - 1) // 2
    b = c - s * (s + 1) // 2
    return s - b, b


# ---------------------------------------------------------------------------
# Tag schemes
# ---------------------------------------------------------------------------

_NODE_KEYS = (
    "zero", "var", "succ", "add", "mul",
    "eq", "le", "not", "and", "or", "imp", "forall", "exists",
)

_CLASS_KEY = {
    Zero: "zero", Var: "var", Succ: "succ", Add: "add", Mul: "mul",
    Eq: "eq", Le: "le", Not: "not", And: "and", Or: "or", Imp: "imp",
    ForAll: "forall", Exists: "exists",
}

TERM_KEYS = frozenset(("zero", "var", "succ", "add", "mul"))
UNARY_KEYS = frozenset(("succ", "not"))
BINARY_KEYS = frozenset(("add", "mul", "eq", "le", "and", "or", "imp"))
QUANT_KEYS = frozenset(("forall", "exists"))


@dataclass(frozen=True)
class CodingScheme:
    name: str
    tags: tuple[int, ...]  # tag of each key in _NODE_KEYS order

    def __post_init__(self) -> None:
        if sorted(self.tags) != list(range(13)):
            raise ValueError("tags must be a permutation of 0..12")
        if self.tags[0] != 0:
            raise ValueError("the zero constant must keep tag 0")

    def tag(self, key: str) -> int:
        return self.tags[_NODE_KEYS.index(key)]

    def key_of_tag(self, tag: int) -> str:
        return _NODE_KEYS[self.tags.index(tag)]

    def term_code(self, t: Term, bit_limit: int = DEFAULT_BIT_LIMIT) -> int:
        return _encode(self, t, bit_limit)

    def formula_code(self, f: Formula, bit_limit: int = DEFAULT_BIT_LIMIT) -> int:
        return _encode(self, f, bit_limit)

    def decode_term(self, code: int) -> Term:
        obj = _decode(self, code)
        if not isinstance(obj, Term):
            raise DecodeError(f"{code} codes a formula, not a term")
        return obj

    def decode_formula(self, code: int) -> Formula:
        obj = _decode(self, code)
        if not isinstance(obj, Formula):
            raise DecodeError(f"{code} codes a term, not a formula")
        return obj

    def is_term_code(self, code: int) -> bool:
        try:
            self.decode_term(code)
            return True
        except DecodeError:
            return False

    def is_formula_code(self, code: int) -> bool:
        try:
            self.decode_formula(code)
            return True
        except DecodeError:
            return False


FULL = CodingScheme("full", tuple(range(13)))

# Reordered so code("0 = 0") = pair(2, 0) = 3 and one-line proofs of it sit
# inside exhaustive sweep range; see the scheme note in the README.
MICRO = CodingScheme(
    "micro",
    (
        0,   # zero
        1,   # var
        3,   # succ
        7,   # add
        8,   # mul
        2,   # eq
        9,   # le
        5,   # not
        10,  # and
        11,  # or
        4,   # imp
        6,   # forall
        12,  # exists
    ),
)

SCHEMES = {"full": FULL, "micro": MICRO}


# ---------------------------------------------------------------------------
# Size estimation (near-exact, never builds the big integers themselves)
# ---------------------------------------------------------------------------
#
# Code values are simulated as (mantissa, exponent) pairs: exact integers
# while they fit in _SIM_PREC bits, truncated mantissas with a tracked
# exponent afterwards.  Pairing roughly squares its arguments, so truncation
# error stays relatively far below one bit of the final answer.

_SIM_PREC = 200

_Sim = tuple[int, int]


def _sim_norm(m: int, e: int) -> _Sim:
    extra = m.bit_length() - _SIM_PREC
    return (m >> extra, e + extra) if extra > 0 else (m, e)


def _sim_lit(v: int) -> _Sim:
    return _sim_norm(v, 0)


def _sim_add(x: _Sim, y: _Sim) -> _Sim:
    if x[1] < y[1]:
        x, y = y, x
    if x[0] == 0:
        return y
    d = x[1] - y[1]
    if d > 2 * _SIM_PREC:  # y is below x's precision
        return x
    return _sim_norm((x[0] << d) + y[0], y[1])


def _sim_pair(x: _Sim, y: _Sim) -> _Sim:
    s = _sim_add(x, y)
    if s[1] == 0 and y[1] == 0:
        return _sim_norm(s[0] * (s[0] + 1) // 2 + y[0], 0)
    return _sim_norm(s[0] * s[0], 2 * s[1] - 1)  # the s and +b terms are below precision


def _sim_bits(x: _Sim) -> int:
    return min(x[0].bit_length() + x[1], _BITS_CAP)


def _sim_numeral_code(scheme: CodingScheme, n: int) -> _Sim:
    """Simulated code of the binary-style numeral of n."""
    c_one = _exact_numeral_code(scheme, 1)
    codes = {0: _sim_lit(_exact_numeral_code(scheme, 0)), 1: _sim_lit(c_one)}
    tag_add = _sim_lit(scheme.tag("add"))
    tag_mul = _sim_lit(scheme.tag("mul"))
    sim_two = _sim_lit(pair(scheme.tag("succ"), pair(c_one, 0)))
    sim_one = codes[1]

    chain = []
    m = n
    while m not in codes:
        chain.append(m)
        m >>= 1
    for m in reversed(chain):
        ck = codes[m >> 1]
        if ck[1] > _BITS_CAP:
            return ck
        doubled = _sim_pair(tag_mul, _sim_pair(sim_two, ck))
        codes[m] = doubled if m % 2 == 0 else _sim_pair(tag_add, _sim_pair(doubled, sim_one))
    return codes[n]


def _sim_code_numeral(node: "CodeNumeral") -> _Sim:
    inner = code_bits_estimate(node.scheme, node.formula)
    if inner <= 64:
        value = _encode(node.scheme, node.formula, bit_limit=1 << 20)
        return _sim_numeral_code(node.scheme, value)
    # Unknown value with `inner` bits; assume the worst halving chain, where
    # every level both doubles and increments.  Sizes explode long before the
    # loop cap matters.
    scheme = node.scheme
    c_one = _exact_numeral_code(scheme, 1)
    tag_add = _sim_lit(scheme.tag("add"))
    tag_mul = _sim_lit(scheme.tag("mul"))
    sim_two = _sim_lit(pair(scheme.tag("succ"), pair(c_one, 0)))
    sim_one = _sim_lit(c_one)
    acc = sim_one
    for _ in range(min(inner - 1, 64)):
        acc = _sim_pair(tag_add, _sim_pair(_sim_pair(tag_mul, _sim_pair(sim_two, acc)), sim_one))
        if acc[1] > _BITS_CAP:
            return acc
    if inner - 1 > 64:
        return (1, _BITS_CAP)
    return acc


def code_bits_estimate(scheme: CodingScheme, obj: Union[Term, Formula]) -> int:
    """Bit length of code(obj), simulated without building the integer."""
    done: dict[int, _Sim] = {}
    stack: list[tuple[Union[Term, Formula], bool]] = [(obj, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in done:
            continue
        if isinstance(node, Zero):
            done[id(node)] = _sim_lit(pair(scheme.tag("zero"), 0))
        elif isinstance(node, Var):
            done[id(node)] = _sim_pair(_sim_lit(scheme.tag("var")), _sim_lit(node.index))
        elif isinstance(node, Num):
            done[id(node)] = _sim_numeral_code(scheme, node.value)
        elif isinstance(node, CodeNumeral):
            done[id(node)] = _sim_code_numeral(node)
        elif not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in _children(node))
        else:
            kids = [done[id(c)] for c in _children(node)]
            tag = _sim_lit(scheme.tag(_CLASS_KEY[type(node)]))
            if isinstance(node, (ForAll, Exists)):
                payload = _sim_pair(_sim_lit(node.var), kids[0])
            elif len(kids) == 1:
                payload = _sim_pair(kids[0], _sim_lit(0))
            else:
                payload = _sim_pair(kids[0], kids[1])
            done[id(node)] = _sim_pair(tag, payload)
    return _sim_bits(done[id(obj)])


def _children(node: Union[Term, Formula]) -> tuple:
    if isinstance(node, Succ):
        return (node.arg,)
    if isinstance(node, (Add, Mul, Eq, Le, And, Or, Imp)):
        return (node.left, node.right)
    if isinstance(node, Not):
        return (node.body,)
    if isinstance(node, (ForAll, Exists)):
        return (node.body,)
    return ()


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

_NUMERAL_CODE_MEMO: dict[tuple[str, int], int] = {}


def _exact_numeral_code(scheme: CodingScheme, n: int) -> int:
    """Code of the binary-style numeral of n, built most significant bit first."""
    key = (scheme.name, n)
    got = _NUMERAL_CODE_MEMO.get(key)
    if got is not None:
        return got
    zero = pair(scheme.tag("zero"), 0)
    one = pair(scheme.tag("succ"), pair(zero, 0))
    if n == 0:
        code = zero
    elif n == 1:
        code = one
    else:
        two = pair(scheme.tag("succ"), pair(one, 0))
        mul_tag, add_tag = scheme.tag("mul"), scheme.tag("add")
        code = one
        for i in range(n.bit_length() - 2, -1, -1):
            code = pair(mul_tag, pair(two, code))
            if (n >> i) & 1:
                code = pair(add_tag, pair(code, one))
    if n.bit_length() <= 16:
        _NUMERAL_CODE_MEMO[key] = code
    return code


def _encode(scheme: CodingScheme, obj: Union[Term, Formula], bit_limit: int) -> int:
    est = code_bits_estimate(scheme, obj)
    if est > bit_limit:
        raise CodeOverflowError(est, bit_limit)
    done: dict[int, int] = {}
    stack: list[tuple[Union[Term, Formula], bool]] = [(obj, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in done:
            continue
        if isinstance(node, Zero):
            done[id(node)] = pair(scheme.tag("zero"), 0)
        elif isinstance(node, Var):
            done[id(node)] = pair(scheme.tag("var"), node.index)
        elif isinstance(node, Num):
            done[id(node)] = _exact_numeral_code(scheme, node.value)
        elif isinstance(node, CodeNumeral):
            inner = node.scheme.formula_code(node.formula, bit_limit)
            done[id(node)] = _exact_numeral_code(scheme, inner)
        elif not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in _children(node))
        else:
            tag = scheme.tag(_CLASS_KEY[type(node)])
            kids = [done[id(c)] for c in _children(node)]
            if isinstance(node, (ForAll, Exists)):
                payload = pair(node.var, kids[0])
            elif len(kids) == 1:
                payload = pair(kids[0], 0)
            else:
                payload = pair(kids[0], kids[1])
            done[id(node)] = pair(tag, payload)
    return done[id(obj)]


# ---------------------------------------------------------------------------
# Decoding
# ---------------------------------------------------------------------------

_UNARY_CLS = {"succ": Succ, "not": Not}
_BINARY_CLS = {
    "add": Add, "mul": Mul, "eq": Eq, "le": Le,
    "and": And, "or": Or, "imp": Imp,
}
_QUANT_CLS = {"forall": ForAll, "exists": Exists}


def _decode(scheme: CodingScheme, code: int) -> Union[Term, Formula]:
    if code < 0:
        raise DecodeError("codes are natural numbers")
    built: dict[int, Union[Term, Formula]] = {}
    # Entries: (code, key, quant_var_or_None, child_codes, expanded)
    stack: list[tuple] = [(code, None, None, None, False)]
    while stack:
        c, key, qvar, kids, expanded = stack.pop()
        if c in built:
            continue
        if not expanded:
            tag, payload = unpair(c)
            if tag > 12:
                raise DecodeError(f"tag {tag} out of range in {c}")
            key = scheme.key_of_tag(tag)
            if key == "zero":
                if payload != 0:
                    raise DecodeError(f"zero node with payload {payload}")
                built[c] = Zero()
            elif key == "var":
                built[c] = Var(payload)
            elif key in UNARY_KEYS:
                child, z = unpair(payload)
                if z != 0:
                    raise DecodeError(f"unary node with second child {z}")
                stack.append((c, key, None, (child,), True))
                stack.append((child, None, None, None, False))
            elif key in BINARY_KEYS:
                lc, rc = unpair(payload)
                stack.append((c, key, None, (lc, rc), True))
                stack.append((lc, None, None, None, False))
                stack.append((rc, None, None, None, False))
            else:
                v, bc = unpair(payload)
                stack.append((c, key, v, (bc,), True))
                stack.append((bc, None, None, None, False))
            continue
        parts = [built[k] for k in kids]
        want_terms = key in ("succ", "add", "mul", "eq", "le")
        if want_terms and not all(isinstance(p, Term) for p in parts):
            raise DecodeError(f"{key} child is not a term")
        if not want_terms and not all(isinstance(p, Formula) for p in parts):
            raise DecodeError(f"{key} child is not a formula")
        if key in _UNARY_CLS:
            built[c] = _UNARY_CLS[key](parts[0])
        elif key in _BINARY_CLS:
            built[c] = _BINARY_CLS[key](parts[0], parts[1])
        else:
            built[c] = _QUANT_CLS[key](qvar, parts[0])
    return built[code]


# ---------------------------------------------------------------------------
# Beta-coded sequences
# ---------------------------------------------------------------------------

def beta_get(a: int, b: int, i: int) -> int:
    return a % (1 + (i + 1) * b)


def seq_encode(values: Sequence[int]) -> int:
    """Canonical sequence code pair(pair(a, b), n).

    b is lcm(1..n) * (1 + max(values)), which makes the moduli
    m_i = 1 + (i+1)*b pairwise coprime, and a is the least CRT solution.
    """
    n = len(values)
    if n == 0:
        return pair(pair(0, 0), 0)
    if any(v < 0 for v in values):
        raise ValueError("sequence values must be natural numbers")
    b = math.lcm(*range(1, n + 1)) * (1 + max(values))
    moduli = [1 + (i + 1) * b for i in range(n)]
    a = _crt(values, moduli)
    return pair(pair(a, b), n)


def _crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    def fold(acc: tuple[int, int], item: tuple[int, int]) -> tuple[int, int]:
        a1, m1 = acc
        a2, m2 = item
        # moduli are pairwise coprime by construction
        step = (a2 - a1) * pow(m1, -1, m2) % m2
        return a1 + step * m1, m1 * m2

    a, _ = reduce(fold, zip(residues, moduli), (0, 1))
    return a


def seq_len(code: int) -> int:
    _, n = unpair(code)
    return n


def seq_elem(code: int, i: int) -> int:
    ab, n = unpair(code)
    if not 0 <= i < n:
        raise IndexError(f"index {i} out of range for length {n}")
    a, b = unpair(ab)
    return beta_get(a, b, i)


def seq_decode(code: int) -> list[int]:
    ab, n = unpair(code)
    a, b = unpair(ab)
    return [beta_get(a, b, i) for i in range(n)]
