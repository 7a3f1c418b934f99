"""Arithmetical-hierarchy bookkeeping: prenexing and classification.

Two classifiers ship, and they answer different questions:

* classify(f) is purely syntactic: it prenexes f (bounded-quantifier blocks
  with quantifier-free-modulo-bounded interiors stay inside the matrix) and
  counts alternations in the resulting prefix.  A bounded block whose
  interior holds an unbounded quantifier cannot stay in the matrix, so its
  interior is pulled through; first-order prenexing has no rule that keeps
  such a block bounded, which may over-report the level relative to the
  semantic class.
* classify_annotated(f, annotation) implements the closure calculus on the
  hierarchy lattice instead: bounded quantifiers never lift the level, and
  occurrences listed in ``annotation`` (a map from tree paths to declared
  classifications) are treated as atoms of that class.  The lattice carries
  an internal Delta kind for boolean ties; a tie that survives to the output
  is reported as Sigma of its level, the deterministic pick between the two
  valid upper bounds.

Paths address formula nodes by child index (Not/quantifier: 0; binary
connectives: 0 and 1), counted in the raw tree, guards included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .syntax import (
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    Imp,
    Le,
    Not,
    Or,
    Var,
    bounded_exists,
    bounded_forall,
    formulas_equal,
    match_bounded,
    max_index,
    substitute,
)


@dataclass(frozen=True)
class Classification:
    kind: str  # "delta0" | "sigma" | "pi"
    level: int

    def __post_init__(self) -> None:
        if self.kind == "delta0":
            if self.level != 0:
                raise ValueError("delta0 sits at level 0")
        elif self.kind in ("sigma", "pi"):
            if self.level < 1:
                raise ValueError(f"{self.kind} needs level >= 1")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "delta0":
            return "Delta0"
        return f"{'Sigma' if self.kind == 'sigma' else 'Pi'}({self.level})"

    def le(self, other: "Classification") -> bool:
        """Inclusion order; Sigma(n) and Pi(n) are incomparable."""
        if self == other or self.level < other.level:
            return True
        return False


DELTA0 = Classification("delta0", 0)


def sigma(n: int) -> Classification:
    return Classification("sigma", n)


def pi(n: int) -> Classification:
    return Classification("pi", n)


def parse_classification(text: str) -> Classification:
    text = text.strip()
    if text == "Delta0":
        return DELTA0
    for name, kind in (("Sigma", "sigma"), ("Pi", "pi")):
        if text.startswith(name + "(") and text.endswith(")"):
            return Classification(kind, int(text[len(name) + 1:-1]))
    raise ValueError(f"bad classification: {text!r}")


# ---------------------------------------------------------------------------
# Prenexing
# ---------------------------------------------------------------------------

def is_pure_bounded(f: Formula) -> bool:
    """True when every quantifier in f heads a bounded shape, recursively."""
    if isinstance(f, (Eq, Le)):
        return True
    if isinstance(f, Not):
        return is_pure_bounded(f.body)
    if isinstance(f, (And, Or, Imp)):
        return is_pure_bounded(f.left) and is_pure_bounded(f.right)
    shape = match_bounded(f)
    return shape is not None and is_pure_bounded(shape.body)


def _rename_apart(f: Formula, counter: list[int]) -> Formula:
    """Give every binder a globally fresh variable (deterministic pre-order)."""
    if isinstance(f, (Eq, Le)):
        return f
    if isinstance(f, Not):
        return Not(_rename_apart(f.body, counter))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(_rename_apart(f.left, counter), _rename_apart(f.right, counter))
    assert isinstance(f, (ForAll, Exists))
    fresh = counter[0]
    counter[0] += 1
    body = substitute(f.body, f.var, Var(fresh))
    return type(f)(fresh, _rename_apart(body, counter))


def _nnf(f: Formula, positive: bool) -> Formula:
    if isinstance(f, (Eq, Le)):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return _nnf(f.body, not positive)
    if isinstance(f, And):
        cls = And if positive else Or
        return cls(_nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, Or):
        cls = Or if positive else And
        return cls(_nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, Imp):
        cls = Or if positive else And
        return cls(_nnf(f.left, not positive), _nnf(f.right, positive))
    assert isinstance(f, (ForAll, Exists))
    shape = match_bounded(f)
    if shape is not None and is_pure_bounded(shape.body):
        # Keep (or dualize) the block whole; its interior stays untouched
        # up to NNF, which preserves pure-boundedness.
        body = _nnf(shape.body, positive)
        if positive:
            make = bounded_forall if isinstance(f, ForAll) else bounded_exists
        else:
            make = bounded_exists if isinstance(f, ForAll) else bounded_forall
        return make(f.var, shape.bound, body)
    if isinstance(f, ForAll):
        cls = ForAll if positive else Exists
    else:
        cls = Exists if positive else ForAll
    return cls(f.var, _nnf(f.body, positive))


def _pull(f: Formula) -> tuple[list[tuple[str, int]], Formula]:
    """Quantifier prefix and matrix of an NNF, renamed-apart formula."""
    if isinstance(f, (Eq, Le, Not)):
        return [], f
    if isinstance(f, (And, Or)):
        p1, m1 = _pull(f.left)
        p2, m2 = _pull(f.right)
        return p1 + p2, type(f)(m1, m2)
    assert isinstance(f, (ForAll, Exists))
    shape = match_bounded(f)
    if shape is not None and is_pure_bounded(shape.body):
        return [], f
    kind = "forall" if isinstance(f, ForAll) else "exists"
    p, m = _pull(f.body)
    return [(kind, f.var)] + p, m


def prenex_parts(f: Formula) -> tuple[list[tuple[str, int]], Formula]:
    """Prefix (as (kind, var) pairs) and matrix of the prenex normal form."""
    counter = [max_index(f) + 1]
    g = _rename_apart(f, counter)
    return _pull(_nnf(g, True))


def prenex(f: Formula) -> Formula:
    """A logically equivalent formula with all unbounded quantifiers in front.

    Deterministic: binders are renamed apart in pre-order, negations pushed
    to atoms (implications unfolded), quantifiers collected left to right.
    Pure bounded blocks stay in the matrix.
    """
    prefix, matrix = prenex_parts(f)
    out = matrix
    for kind, var in reversed(prefix):
        out = (ForAll if kind == "forall" else Exists)(var, out)
    return out


def classify(f: Formula) -> Classification:
    """Syntactic position of prenex(f) in the arithmetical hierarchy."""
    prefix, _ = prenex_parts(f)
    blocks: list[str] = []
    for kind, _var in prefix:
        if not blocks or blocks[-1] != kind:
            blocks.append(kind)
    if not blocks:
        return DELTA0
    return Classification("sigma" if blocks[0] == "exists" else "pi", len(blocks))


# ---------------------------------------------------------------------------
# Annotated closure calculus
# ---------------------------------------------------------------------------

# Internal lattice elements: (level, kind) with kind in {"D", "S", "P"}.
_LKind = tuple[int, str]


def _to_lattice(c: Classification) -> _LKind:
    if c.kind == "delta0":
        return (0, "D")
    return (c.level, "S" if c.kind == "sigma" else "P")


def _from_lattice(lk: _LKind) -> Classification:
    n, k = lk
    if n == 0:
        return DELTA0
    if k == "D":  # boolean tie: Sigma is the documented deterministic pick
        return Classification("sigma", n)
    return Classification("sigma" if k == "S" else "pi", n)


def _join(a: _LKind, b: _LKind) -> _LKind:
    if a[0] != b[0]:
        return a if a[0] > b[0] else b
    n, (ka, kb) = a[0], (a[1], b[1])
    if ka == kb:
        return a
    if ka == "D":
        return b
    if kb == "D":
        return a
    return (n + 1, "D")  # Sigma(n) join Pi(n)


def _dual(a: _LKind) -> _LKind:
    n, k = a
    if k == "S":
        return (n, "P")
    if k == "P":
        return (n, "S")
    return a


def _close_exists(a: _LKind) -> _LKind:
    n, k = a
    if k == "S":
        return a
    if k == "P":
        return (n + 1, "S")
    return (max(n, 1), "S")


def _close_forall(a: _LKind) -> _LKind:
    return _dual(_close_exists(_dual(a)))


Annotation = Mapping[tuple[int, ...], Classification]


def classify_annotated(f: Formula, annotation: Optional[Annotation] = None) -> Classification:
    """Hierarchy class under the closure calculus.

    Bounded quantifiers do not lift the level; annotated occurrences count
    as atoms of their declared class.  The result is an upper bound that is
    never below the join of the declared classes of the atoms it covers.
    """
    ann = dict(annotation or {})

    def rec(g: Formula, path: tuple[int, ...]) -> _LKind:
        declared = ann.get(path)
        if declared is not None:
            return _to_lattice(declared)
        if isinstance(g, (Eq, Le)):
            return (0, "D")
        if isinstance(g, Not):
            return _dual(rec(g.body, path + (0,)))
        if isinstance(g, And) or isinstance(g, Or):
            return _join(rec(g.left, path + (0,)), rec(g.right, path + (1,)))
        if isinstance(g, Imp):
            return _join(_dual(rec(g.left, path + (0,))), rec(g.right, path + (1,)))
        shape = match_bounded(g)
        if shape is not None:
            # guard atom is Delta0; the block's class is its body's class
            return rec(shape.body, path + (0, 1))
        if isinstance(g, Exists):
            return _close_exists(rec(g.body, path + (0,)))
        return _close_forall(rec(g.body, path + (0,)))

    return _from_lattice(rec(f, ()))


def find_occurrences(f: Formula, target: Formula) -> list[tuple[int, ...]]:
    """Paths of subformulas structurally equal to target (pre-order)."""
    out: list[tuple[int, ...]] = []

    def rec(g: Formula, path: tuple[int, ...]) -> None:
        if formulas_equal(g, target):
            out.append(path)
            return
        if isinstance(g, (Eq, Le)):
            return
        if isinstance(g, Not):
            rec(g.body, path + (0,))
        elif isinstance(g, (And, Or, Imp)):
            rec(g.left, path + (0,))
            rec(g.right, path + (1,))
        else:
            rec(g.body, path + (0,))

    rec(f, ())
    return out
