"""Sentences with open truth value, and transforms that keep it open.

mk_twin_primes builds the running Pi(2) candidate.  The two transforms
condition such a candidate on consistency-flavoured sentences: mk_simple uses
Con of the theory and of its one-step extension, mk_theorem1 uses a Rosser
sentence together with Con.  Either way the wrapper contributes the
unprovability and the candidate keeps the truth value unknown; the combined
sentence still classifies as Pi(2), which mk_theorem1 checks with a lint
(any collapse to Pi(1) or Sigma(1) would defeat the construction, since
proving a sentence of that shape independent settles its truth).

skeleton_equiv verifies the propositional bookkeeping the wrappers rely on,
treating quantified blocks as opaque atoms.  iterate_con climbs the tower
T, T+Con(T), ... while the axiom presentation stays Sigma(1).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .arithmetization import CON_CORE_PATH, Theory, extend, mk_axioms_pa, mk_con
from .coding import FULL
from .fixedpoint import RosserSentence, mk_rosser
from .hierarchy import DELTA0, Classification, classify_annotated, pi, sigma
from .syntax import (
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
    ONE,
    Or,
    Succ,
    Term,
    Var,
    bounded_exists,
    bounded_forall,
)

__all__ = [
    "ConstructionWarning",
    "SimpleConstruction",
    "Theorem1Construction",
    "iterate_con",
    "mk_prime",
    "mk_simple",
    "mk_theorem1",
    "mk_twin_primes",
    "skeleton_equiv",
]


class ConstructionWarning(UserWarning):
    """A construction produced a sentence whose shape defeats its purpose."""


# ---------------------------------------------------------------------------
# Number-theoretic candidates
# ---------------------------------------------------------------------------

def _prime_of(subject: Term, d: int, q: int) -> Formula:
    """subject > 1 and every divisor of subject is 1 or subject itself."""
    divides = bounded_exists(q, subject, Eq(Mul(Var(d), Var(q)), subject))
    trivial = Or(Eq(Var(d), ONE), Eq(Var(d), subject))
    return And(
        Not(Le(subject, ONE)),
        bounded_forall(d, subject, Imp(divides, trivial)),
    )


def mk_prime() -> Formula:
    """Delta(0) primality of v0."""
    return _prime_of(Var(0), 1, 2)


def mk_twin_primes() -> Formula:
    """For every v0 there is a larger prime v1 with v1 + 2 prime: Pi(2)."""
    y = Var(1)
    body = And(
        Le(Succ(Var(0)), y),
        And(_prime_of(y, 2, 3), _prime_of(Succ(Succ(y)), 4, 5)),
    )
    return ForAll(0, Exists(1, body))


# ---------------------------------------------------------------------------
# Conditioning transforms
# ---------------------------------------------------------------------------

Annotation = Mapping[tuple[int, ...], Classification]


@dataclass(frozen=True, eq=False)
class SimpleConstruction:
    """phi = alpha -> (beta and gamma), where alpha is Con of the theory and
    beta is Con of the theory extended by alpha.

    Provability of phi over the theory would yield Con of the extension
    outright, and refutability would yield alpha while refuting beta and
    gamma it cannot reach; so phi is unprovable either way while its truth
    reduces to gamma's (alpha and beta being true)."""

    theory: Theory
    gamma: Formula
    alpha: Formula
    beta: Formula
    phi: Formula
    annotation: Annotation = field(repr=False)

    def classification(self) -> Classification:
        return classify_annotated(self.phi, self.annotation)


def mk_simple(
    gamma: Formula,
    theory: Optional[Theory] = None,
    gamma_annotation: Optional[Annotation] = None,
) -> SimpleConstruction:
    theory = theory if theory is not None else mk_axioms_pa(FULL)
    alpha = mk_con(theory)
    beta = mk_con(extend(theory, alpha))
    phi = Imp(alpha, And(beta, gamma))
    annotation: dict[tuple[int, ...], Classification] = {
        (0,) + CON_CORE_PATH: DELTA0,
        (1, 0) + CON_CORE_PATH: DELTA0,
    }
    for p, c in (gamma_annotation or {}).items():
        annotation[(1, 1) + p] = c
    return SimpleConstruction(
        theory=theory, gamma=gamma, alpha=alpha, beta=beta, phi=phi,
        annotation=annotation,
    )


@dataclass(frozen=True, eq=False)
class Theorem1Construction:
    """phi = rho -> (Con(T) and psi) for the theory's Rosser sentence rho.

    Unprovable because proving phi proves Con(T) from the unprovable-but-
    true rho side; irrefutable because refuting phi proves rho.  True in
    the standard model exactly when psi is."""

    theory: Theory
    psi: Formula
    rosser: RosserSentence
    con: Formula
    phi: Formula
    annotation: Annotation = field(repr=False)

    def classification(self) -> Classification:
        return classify_annotated(self.phi, self.annotation)


def mk_theorem1(
    theory: Theory,
    psi: Formula,
    psi_annotation: Optional[Annotation] = None,
    annotation_overrides: Optional[Annotation] = None,
) -> Theorem1Construction:
    """Condition psi on the theory's Rosser sentence and consistency.

    annotation_overrides lets a caller assert classifications at absolute
    paths of phi.  If the resulting class sits inside Pi(1) or Sigma(1) a
    ConstructionWarning fires: a sentence of either shape that is proved
    independent is thereby settled (a true Sigma(1) sentence is provable, so
    an independent one is false; dually a Pi(1) one is true), which defeats
    the goal of an unknown truth value."""
    rosser = mk_rosser(theory)
    con = mk_con(theory)
    phi = Imp(rosser.sentence, And(con, psi))
    annotation: dict[tuple[int, ...], Classification] = {}
    for p, c in rosser.annotation.items():
        annotation[(0,) + p] = c
    annotation[(1, 0) + CON_CORE_PATH] = DELTA0
    for p, c in (psi_annotation or {}).items():
        annotation[(1, 1) + p] = c
    for p, c in (annotation_overrides or {}).items():
        annotation[p] = c
    built = Theorem1Construction(
        theory=theory, psi=psi, rosser=rosser, con=con, phi=phi,
        annotation=annotation,
    )
    cls = built.classification()
    if cls.le(pi(1)) or cls.le(sigma(1)):
        warnings.warn(
            f"conditioned sentence classifies as {cls}: proving a sentence of "
            "this shape independent settles its truth value, so the "
            "construction is self-defeating below Pi(2)",
            ConstructionWarning,
            stacklevel=2,
        )
    return built


def iterate_con(base: Theory, n: int) -> Theory:
    """The n-th theory in the tower T, T + Con(T), ...; presentation stays
    Sigma(1) because each step adds a single coded sentence."""
    if n < 0:
        raise ValueError("tower height must be nonnegative")
    theory = base
    for _ in range(n):
        theory = extend(theory, mk_con(theory))
    return theory


# ---------------------------------------------------------------------------
# Propositional skeletons
# ---------------------------------------------------------------------------

def _canon(f: Formula) -> tuple:
    """Alpha-invariant serialization; CodeNumeral stays symbolic (encoding it
    may be infeasible), so equality is up to bound renaming, not value."""
    out: list = []
    stack: list[tuple[object, Mapping[int, int], int]] = [(f, {}, 0)]
    while stack:
        node, env, depth = stack.pop()
        if isinstance(node, Var):
            b = env.get(node.index)
            out.append(("b", b) if b is not None else ("v", node.index))
        elif isinstance(node, Num):
            out.append(("n", node.value))
        elif isinstance(node, CodeNumeral):
            out.append(("code", node.scheme.name))
            stack.append((node.formula, {}, 0))
        elif isinstance(node, (ForAll, Exists)):
            out.append("A" if isinstance(node, ForAll) else "E")
            inner = dict(env)
            inner[node.var] = depth
            stack.append((node.body, inner, depth + 1))
        else:
            out.append(type(node).__name__)
            kids = _children_of(node)
            for child in reversed(kids):
                stack.append((child, env, depth))
    return tuple(out)


def _children_of(node) -> tuple:
    if hasattr(node, "left"):
        return (node.left, node.right)
    if hasattr(node, "body"):
        return (node.body,)
    if hasattr(node, "arg"):
        return (node.arg,)
    return ()


def skeleton_equiv(
    f: Formula, g: Formula, assumptions: Iterable[Formula] = ()
) -> bool:
    """Whether the assumptions propositionally entail f <-> g.

    All three ingredients are reduced to Boolean skeletons: connectives are
    decomposed, while atomic and quantified subformulas become opaque atoms
    (equal atoms iff equal up to bound renaming).  The verdict is a truth
    table over those atoms, so True certifies the entailment by elementary
    logic alone; False only means the skeletons do not suffice.  Raises
    ValueError beyond 24 distinct atoms."""
    atoms: dict[tuple, int] = {}

    def prop(h: Formula):
        if isinstance(h, Not):
            return ("not", prop(h.body))
        if isinstance(h, And):
            return ("and", prop(h.left), prop(h.right))
        if isinstance(h, Or):
            return ("or", prop(h.left), prop(h.right))
        if isinstance(h, Imp):
            return ("imp", prop(h.left), prop(h.right))
        idx = atoms.setdefault(_canon(h), len(atoms))
        return ("atom", idx)

    pf, pg = prop(f), prop(g)
    pas = [prop(a) for a in assumptions]
    n = len(atoms)
    if n > 24:
        raise ValueError(f"{n} distinct atoms; skeleton comparison caps at 24")
    rows = 1 << n
    full = (1 << rows) - 1
    columns = []
    for i in range(n):
        # row j of column i is bit i of j: a block of 2**i ones shifted up
        # by 2**i, replicated across the table with period 2**(i + 1)
        block = ((1 << (1 << i)) - 1) << (1 << i)
        period = 1 << (i + 1)
        columns.append(block * (full // ((1 << period) - 1)))

    def ev(p) -> int:
        if p[0] == "atom":
            return columns[p[1]]
        if p[0] == "not":
            return full & ~ev(p[1])
        a, b = ev(p[1]), ev(p[2])
        if p[0] == "and":
            return a & b
        if p[0] == "or":
            return a | b
        return (full & ~a) | b

    admissible = full
    for p in pas:
        admissible &= ev(p)
    return (ev(pf) ^ ev(pg)) & admissible == 0
