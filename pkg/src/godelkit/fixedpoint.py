"""Self-referential sentences via the diagonal construction.

diag_meta is the meta-level diagonal function on codes.  diagonalize builds
the object-level counterpart: given theta(x) it produces eta and the sentence
delta = eta[x := numeral(code(eta))], whose truth reduces to theta holding of
delta's own code.  The inner numeral is kept as a compressed CodeNumeral leaf;
for interesting theta the expanded integer would dwarf memory, so everything
downstream works with the tree and only encodes on explicit request.

mk_rosser instantiates the construction with the classic provability-
comparison matrix: no proof of x arrives before a proof of its negation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional

from .arithmetization import ArithmetizedPredicate, Theory, mk_prf, mk_syntax_predicates
from .coding import FULL, CodingScheme
from .hierarchy import DELTA0, Classification, classify_annotated
from .syntax import (
    Add,
    And,
    CodeNumeral,
    ForAll,
    Formula,
    Imp,
    Mul,
    Num,
    Succ,
    Var,
    bounded_exists,
    formulas_equal,
    free_vars,
    max_index,
    substitute,
    substitute_many,
)

__all__ = [
    "FixedPoint",
    "RosserSentence",
    "diag_meta",
    "diagonalize",
    "mk_rosser",
]

_DIAG_MEMO: dict[str, ArithmetizedPredicate] = {}


def _diag_predicate(scheme: CodingScheme) -> ArithmetizedPredicate:
    got = _DIAG_MEMO.get(scheme.name)
    if got is None:
        got = mk_syntax_predicates(scheme)["Diag"]
        _DIAG_MEMO[scheme.name] = got
    return got


def diag_meta(code: int, scheme: CodingScheme = FULL, bit_limit: Optional[int] = None) -> int:
    """code(f[v0 := numeral(code)]) for the formula f coded by `code`.

    Raises DecodeError when code is not a formula code, ValueError when the
    formula's free variables are not exactly {v0}, and CodeOverflowError when
    the result would be infeasibly large.
    """
    f = scheme.decode_formula(code)
    if free_vars(f) != {0}:
        raise ValueError("diagonal argument must have exactly v0 free")
    out = substitute(f, 0, Num(code))
    if bit_limit is None:
        return scheme.formula_code(out)
    return scheme.formula_code(out, bit_limit=bit_limit)


@dataclass(frozen=True)
class FixedPoint:
    """theta, the diagonal carrier eta, and the sentence delta it yields.

    delta is eta with its own code's numeral substituted for v0, so that
    delta holds exactly when theta holds of delta's code.  code_eta and
    code_delta force the integer codes and inherit the encoder's feasibility
    guard; verify() checks the construction without encoding anything.
    """

    theta: Formula
    var: int
    eta: Formula
    delta: Formula
    scheme: CodingScheme

    @cached_property
    def code_eta(self) -> int:
        return self.scheme.formula_code(self.eta)

    @cached_property
    def code_delta(self) -> int:
        return self.scheme.formula_code(self.delta)

    def verify(self) -> bool:
        """Recheck both defining identities structurally.

        Confirms eta = ForAll(w, Diag(v0, w) -> theta[var := w]) for eta's
        own bound w, and delta = eta[v0 := CodeNumeral(eta)].  By injectivity
        of the coding this is exactly code_delta == diag_meta(code_eta),
        checked without producing either integer.
        """
        if not isinstance(self.eta, ForAll) or not isinstance(self.eta.body, Imp):
            return False
        w = self.eta.var
        want_guard = substitute(_diag_predicate(self.scheme).formula, 1, Var(w))
        if not formulas_equal(self.eta.body.left, want_guard):
            return False
        if not formulas_equal(self.eta.body.right, substitute(self.theta, self.var, Var(w))):
            return False
        rebuilt = substitute(self.eta, 0, CodeNumeral(self.eta, self.scheme))
        return formulas_equal(self.delta, rebuilt)


def diagonalize(theta: Formula, var: int = 0, scheme: CodingScheme = FULL) -> FixedPoint:
    """Fixed point of theta along var: a sentence delta with
    delta <-> theta[var := numeral(code(delta))] provable from the coding.

    theta may use no free variable besides var.  The returned delta quantifies
    over the diagonal image of eta's code, which pins a single value, so delta
    inherits theta's shape with one universal wrapper.
    """
    if not free_vars(theta) <= {var}:
        raise ValueError("theta may have no free variable besides the diagonalized one")
    diag = _diag_predicate(scheme)
    w = max(max_index(theta), max_index(diag.formula), var) + 1
    theta_w = substitute(theta, var, Var(w))
    eta = ForAll(w, Imp(substitute(diag.formula, 1, Var(w)), theta_w))
    delta = substitute(eta, 0, CodeNumeral(eta, scheme))
    return FixedPoint(theta=theta, var=var, eta=eta, delta=delta, scheme=scheme)


@dataclass(frozen=True, eq=False)
class RosserSentence:
    """A sentence asserting: every proof of it is preceded by a proof of its
    negation.  Unprovable and irrefutable whenever the theory is consistent
    and proves what its proof checker verifies."""

    theory: Theory
    fixed_point: FixedPoint
    sentence: Formula
    annotation: Mapping[tuple[int, ...], Classification] = field(repr=False)

    def classification(self) -> Classification:
        return classify_annotated(self.sentence, self.annotation)


def mk_rosser(theory: Theory) -> RosserSentence:
    """Rosser sentence for the theory, with the annotation that records which
    subformulas abbreviate decidable relations (yielding its Pi(1) shape)."""
    scheme = theory.scheme
    prf = mk_prf(theory)
    negof = mk_syntax_predicates(scheme)["NegOf"]
    base = max(max_index(prf.formula), max_index(negof.formula))
    yv, zv, wv = base + 1, base + 2, base + 3

    prf_of_self = substitute_many(prf.formula, {0: Var(yv), 1: Var(0)})
    prf_of_neg = substitute_many(prf.formula, {0: Var(zv), 1: Var(wv)})
    neg_of_self = substitute(negof.formula, 1, Var(wv))
    # the negation's code is pair(not, pair(x, 0)) <= (not + (x+1)^2)^2, so
    # the witness quantifier can be bounded; this keeps the sentence Pi(1)
    sq = Mul(Succ(Var(0)), Succ(Var(0)))
    neg_code_bound = Mul(Add(Num(scheme.tag("not")), sq), Add(Num(scheme.tag("not")), sq))
    refuted_first = bounded_exists(
        zv,
        Var(yv),
        bounded_exists(wv, neg_code_bound, And(neg_of_self, prf_of_neg)),
    )
    theta = ForAll(yv, Imp(prf_of_self, refuted_first))

    fp = diagonalize(theta, 0, scheme)
    # paths into delta: (0,0) the diagonal guard, (0,1) the shifted theta
    annotation: dict[tuple[int, ...], Classification] = {(0, 0): DELTA0}
    for p in ((0, 0), (0, 1, 0, 1, 0, 1, 0), (0, 1, 0, 1, 0, 1, 1)):
        annotation[(0, 1) + p] = DELTA0
    return RosserSentence(
        theory=theory, fixed_point=fp, sentence=fp.delta, annotation=annotation
    )
