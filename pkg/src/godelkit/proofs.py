"""Hilbert-style proofs: checking, coding, and exhaustive enumeration.

A proof is a sequence of steps, each one of:

* ``LogicalAxiom(schema, args)``, an instance of a fixed schema table
  (propositional P1-P3, quantifier Q1-Q2, equality E1-E7);
* ``TheoryAxiom(formula)``, anything the theory's recognizer accepts;
* ``ModusPonens(i, j)``, from step i (an implication) and step j (its
  antecedent);
* ``Generalization(i, var)``, universal generalization of step i, with no
  side condition (theories axiomatize with closed formulas, so the usual
  free-variable caveat is moot for soundness of what ships here).

Q1 (universal instantiation) only admits closed instantiating terms.  That
restriction costs no generality for the constructions in this package, and
it keeps substitution certificates on the arithmetized side free of
variable-capture bookkeeping; the two sides therefore recognize exactly the
same proofs.

Proofs are coded as the beta-sequence of their step formulas' codes; the
justifications are not part of the code.  decode_proof re-derives them
canonically (schema table order, then theory axiom, then the least modus
ponens pair, then the least generalization premise), so decode(encode(p))
always returns a proof of the same formulas, not necessarily with p's
justification labels.

"Proof of the negation" in enumerate_proofs means neg*(f): the body of f if
f is itself a negation, otherwise ~f.  Without that collapse the verdicts
would not be symmetric under negating the target.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional, Protocol, Sequence, Union

from .coding import CodingScheme, DecodeError, seq_decode, seq_encode, seq_len
from .syntax import (
    Add,
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    Imp,
    Le,
    Mul,
    Not,
    Or,
    ParseError,
    Succ,
    Term,
    Var,
    Zero,
    formulas_equal,
    free_vars,
    is_closed,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
    substitute,
    terms_equal,
)


class ProofError(ValueError):
    """A proof step is malformed or unjustified."""


class TheoryLike(Protocol):
    def is_axiom(self, f: Formula) -> bool: ...


# ---------------------------------------------------------------------------
# Steps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LogicalAxiom:
    schema: str
    args: tuple


@dataclass(frozen=True)
class TheoryAxiom:
    formula: Formula


@dataclass(frozen=True)
class ModusPonens:
    implication: int  # index of the step proving A -> B
    antecedent: int   # index of the step proving A


@dataclass(frozen=True)
class Generalization:
    premise: int
    var: int


Step = Union[LogicalAxiom, TheoryAxiom, ModusPonens, Generalization]
Proof = tuple[Step, ...]


# ---------------------------------------------------------------------------
# Schema table
# ---------------------------------------------------------------------------

def _p1(a: Formula, b: Formula) -> Formula:
    return Imp(a, Imp(b, a))


def _p2(a: Formula, b: Formula, c: Formula) -> Formula:
    return Imp(Imp(a, Imp(b, c)), Imp(Imp(a, b), Imp(a, c)))


def _p3(a: Formula, b: Formula) -> Formula:
    return Imp(Imp(Not(a), Not(b)), Imp(b, a))


def _q1(var: int, body: Formula, t: Term) -> Formula:
    if not is_closed(t):
        raise ProofError(f"Q1 takes a closed term, got {print_term(t)}")
    return Imp(ForAll(var, body), substitute(body, var, t))


def _q2(var: int, a: Formula, b: Formula) -> Formula:
    return Imp(
        ForAll(var, Imp(a, b)),
        Imp(ForAll(var, a), ForAll(var, b)),
    )


def _e1(t: Term) -> Formula:
    return Eq(t, t)


def _e2(t: Term, s: Term) -> Formula:
    return Imp(Eq(t, s), Eq(s, t))


def _e3(t: Term, s: Term, u: Term) -> Formula:
    return Imp(Eq(t, s), Imp(Eq(s, u), Eq(t, u)))


def _e4(t: Term, s: Term) -> Formula:
    return Imp(Eq(t, s), Eq(Succ(t), Succ(s)))


def _e5(t1: Term, s1: Term, t2: Term, s2: Term) -> Formula:
    return Imp(Eq(t1, s1), Imp(Eq(t2, s2), Eq(Add(t1, t2), Add(s1, s2))))


def _e6(t1: Term, s1: Term, t2: Term, s2: Term) -> Formula:
    return Imp(Eq(t1, s1), Imp(Eq(t2, s2), Eq(Mul(t1, t2), Mul(s1, s2))))


def _e7(t1: Term, s1: Term, t2: Term, s2: Term) -> Formula:
    return Imp(Eq(t1, s1), Imp(Eq(t2, s2), Imp(Le(t1, t2), Le(s1, s2))))


# name -> (argument kinds, builder); kinds: F formula, T term, V variable
SCHEMAS: dict[str, tuple[str, Callable[..., Formula]]] = {
    "P1": ("FF", _p1),
    "P2": ("FFF", _p2),
    "P3": ("FF", _p3),
    "Q1": ("VFT", _q1),
    "Q2": ("VFF", _q2),
    "E1": ("T", _e1),
    "E2": ("TT", _e2),
    "E3": ("TTT", _e3),
    "E4": ("TT", _e4),
    "E5": ("TTTT", _e5),
    "E6": ("TTTT", _e6),
    "E7": ("TTTT", _e7),
}

SCHEMA_ORDER = tuple(SCHEMAS)


def schema_instance(schema: str, args: Sequence) -> Formula:
    if schema not in SCHEMAS:
        raise ProofError(f"unknown schema {schema}")
    kinds, build = SCHEMAS[schema]
    if len(args) != len(kinds):
        raise ProofError(f"{schema} takes {len(kinds)} arguments, got {len(args)}")
    for kind, arg in zip(kinds, args):
        ok = (
            (kind == "F" and isinstance(arg, Formula))
            or (kind == "T" and isinstance(arg, Term))
            or (kind == "V" and isinstance(arg, int))
        )
        if not ok:
            raise ProofError(f"bad argument for {schema}: {arg!r}")
    return build(*args)


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

def proof_steps(theory: TheoryLike, proof: Sequence[Step]) -> list[Formula]:
    """The formula proved at each step; raises ProofError on the first bad one."""
    out: list[Formula] = []
    for i, step in enumerate(proof):
        if isinstance(step, LogicalAxiom):
            out.append(schema_instance(step.schema, step.args))
        elif isinstance(step, TheoryAxiom):
            if not theory.is_axiom(step.formula):
                raise ProofError(
                    f"step {i}: not an axiom of the theory: "
                    f"{print_formula(step.formula)}"
                )
            out.append(step.formula)
        elif isinstance(step, ModusPonens):
            a, b = step.implication, step.antecedent
            if not (0 <= a < i and 0 <= b < i):
                raise ProofError(f"step {i}: MP references {a}, {b}")
            imp = out[a]
            if not isinstance(imp, Imp):
                raise ProofError(f"step {i}: step {a} is not an implication")
            if not formulas_equal(imp.left, out[b]):
                raise ProofError(f"step {i}: step {b} does not match the antecedent")
            out.append(imp.right)
        elif isinstance(step, Generalization):
            j = step.premise
            if not 0 <= j < i:
                raise ProofError(f"step {i}: generalization references {j}")
            out.append(ForAll(step.var, out[j]))
        else:
            raise ProofError(f"step {i}: unknown step {step!r}")
    return out


def check_proof(
    theory: TheoryLike, proof: Sequence[Step], conclusion: Optional[Formula] = None
) -> bool:
    try:
        formulas = proof_steps(theory, proof)
    except ProofError:
        return False
    if not formulas:
        return False
    if conclusion is None:
        return True
    return formulas_equal(formulas[-1], conclusion)


# ---------------------------------------------------------------------------
# Canonical justification (for decoding)
# ---------------------------------------------------------------------------

def _extract_q1_term(body: Formula, var: int, inst: Formula) -> Optional[Term]:
    """Find t with inst == body[var := t], t closed; None if there is none."""
    if var not in free_vars(body):
        if formulas_equal(body, inst):
            return Zero()
        return None
    candidate: list[Term] = []

    def walk_t(a: Term, b: Term, shadowed: bool) -> bool:
        if isinstance(a, Var) and a.index == var and not shadowed:
            candidate.append(b)
            return True
        if type(a) is not type(b):
            return False
        if isinstance(a, Var):
            return a.index == b.index
        if isinstance(a, Zero):
            return True
        if isinstance(a, Succ):
            return walk_t(a.arg, b.arg, shadowed)
        if isinstance(a, (Add, Mul)):
            return walk_t(a.left, b.left, shadowed) and walk_t(a.right, b.right, shadowed)
        return terms_equal(a, b)  # Num / CodeNumeral leaves

    def walk_f(a: Formula, b: Formula, shadowed: bool) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, (Eq, Le)):
            return walk_t(a.left, b.left, shadowed) and walk_t(a.right, b.right, shadowed)
        if isinstance(a, Not):
            return walk_f(a.body, b.body, shadowed)
        if isinstance(a, (And, Or, Imp)):
            return walk_f(a.left, b.left, shadowed) and walk_f(a.right, b.right, shadowed)
        assert isinstance(a, (ForAll, Exists))
        if a.var != b.var:
            return False
        return walk_f(a.body, b.body, shadowed or a.var == var)

    if not walk_f(body, inst, False):
        return None
    t = candidate[0]
    if not is_closed(t):
        return None
    if not formulas_equal(substitute(body, var, t), inst):
        return None
    return t


def match_schema(f: Formula) -> Optional[LogicalAxiom]:
    """The first schema instance f matches, in SCHEMA_ORDER; None otherwise."""
    if isinstance(f, Imp):
        a, rest = f.left, f.right
        # P1: A -> (B -> A)
        if isinstance(rest, Imp) and formulas_equal(rest.right, a):
            return LogicalAxiom("P1", (a, rest.left))
        # P2: (A -> (B -> C)) -> ((A -> B) -> (A -> C))
        if (
            isinstance(a, Imp)
            and isinstance(a.right, Imp)
            and isinstance(rest, Imp)
            and isinstance(rest.left, Imp)
            and isinstance(rest.right, Imp)
        ):
            A, B, C = a.left, a.right.left, a.right.right
            if (
                formulas_equal(rest.left.left, A)
                and formulas_equal(rest.left.right, B)
                and formulas_equal(rest.right.left, A)
                and formulas_equal(rest.right.right, C)
            ):
                return LogicalAxiom("P2", (A, B, C))
        # P3: (~A -> ~B) -> (B -> A)
        if (
            isinstance(a, Imp)
            and isinstance(a.left, Not)
            and isinstance(a.right, Not)
            and isinstance(rest, Imp)
            and formulas_equal(rest.left, a.right.body)
            and formulas_equal(rest.right, a.left.body)
        ):
            return LogicalAxiom("P3", (a.left.body, a.right.body))
        # Q1: (A v . A) -> A[v := t]
        if isinstance(a, ForAll):
            t = _extract_q1_term(a.body, a.var, rest)
            if t is not None:
                return LogicalAxiom("Q1", (a.var, a.body, t))
        # Q2: (A v . (A -> B)) -> ((A v . A) -> (A v . B))
        if (
            isinstance(a, ForAll)
            and isinstance(a.body, Imp)
            and isinstance(rest, Imp)
            and isinstance(rest.left, ForAll)
            and isinstance(rest.right, ForAll)
            and rest.left.var == a.var
            and rest.right.var == a.var
            and formulas_equal(rest.left.body, a.body.left)
            and formulas_equal(rest.right.body, a.body.right)
        ):
            return LogicalAxiom("Q2", (a.var, a.body.left, a.body.right))
        # E2 .. E7
        got = _match_equality_imp(f)
        if got is not None:
            return got
    if isinstance(f, Eq) and terms_equal(f.left, f.right):
        return LogicalAxiom("E1", (f.left,))
    return None


def _match_equality_imp(f: Imp) -> Optional[LogicalAxiom]:
    a, rest = f.left, f.right
    if not isinstance(a, Eq):
        return None
    t, s = a.left, a.right
    # E2: t=s -> s=t
    if isinstance(rest, Eq) and terms_equal(rest.left, s) and terms_equal(rest.right, t):
        return LogicalAxiom("E2", (t, s))
    # E3: t=s -> (s=u -> t=u)
    if (
        isinstance(rest, Imp)
        and isinstance(rest.left, Eq)
        and isinstance(rest.right, Eq)
        and terms_equal(rest.left.left, s)
        and terms_equal(rest.right.left, t)
        and terms_equal(rest.right.right, rest.left.right)
    ):
        return LogicalAxiom("E3", (t, s, rest.left.right))
    # E4: t=s -> S(t)=S(s)
    if (
        isinstance(rest, Eq)
        and isinstance(rest.left, Succ)
        and isinstance(rest.right, Succ)
        and terms_equal(rest.left.arg, t)
        and terms_equal(rest.right.arg, s)
    ):
        return LogicalAxiom("E4", (t, s))
    # E5/E6: t1=s1 -> (t2=s2 -> t1@t2 = s1@s2)
    if isinstance(rest, Imp) and isinstance(rest.left, Eq) and isinstance(rest.right, Eq):
        t2, s2 = rest.left.left, rest.left.right
        concl = rest.right
        for cls, name in ((Add, "E5"), (Mul, "E6")):
            if (
                isinstance(concl.left, cls)
                and isinstance(concl.right, cls)
                and terms_equal(concl.left.left, t)
                and terms_equal(concl.left.right, t2)
                and terms_equal(concl.right.left, s)
                and terms_equal(concl.right.right, s2)
            ):
                return LogicalAxiom(name, (t, s, t2, s2))
    # E7: t1=s1 -> (t2=s2 -> (t1<=t2 -> s1<=s2))
    if (
        isinstance(rest, Imp)
        and isinstance(rest.left, Eq)
        and isinstance(rest.right, Imp)
        and isinstance(rest.right.left, Le)
        and isinstance(rest.right.right, Le)
    ):
        t2, s2 = rest.left.left, rest.left.right
        le1, le2 = rest.right.left, rest.right.right
        if (
            terms_equal(le1.left, t)
            and terms_equal(le1.right, t2)
            and terms_equal(le2.left, s)
            and terms_equal(le2.right, s2)
        ):
            return LogicalAxiom("E7", (t, s, t2, s2))
    return None


# ---------------------------------------------------------------------------
# Coding
# ---------------------------------------------------------------------------

def encode_proof(
    theory: TheoryLike, proof: Sequence[Step], scheme: CodingScheme
) -> int:
    """Beta-sequence code of the step formulas (the proof must check)."""
    formulas = proof_steps(theory, proof)
    return seq_encode([scheme.formula_code(f) for f in formulas])


MAX_DECODE_STEPS = 100_000


def decode_proof(
    theory: TheoryLike, code: int, scheme: CodingScheme
) -> Optional[Proof]:
    """Rebuild a proof from a sequence code, re-deriving justifications.

    Returns None when the code is not a beta-sequence of formula codes that
    forms a valid proof.  Justifications are canonical: first matching
    schema, then theory axiom, then least (implication, antecedent) modus
    ponens pair, then least generalization premise.
    """
    try:
        if not 1 <= seq_len(code) <= MAX_DECODE_STEPS:
            return None
        member_codes = seq_decode(code)
    except (ValueError, OverflowError):
        return None
    formulas: list[Formula] = []
    for c in member_codes:
        try:
            formulas.append(scheme.decode_formula(c))
        except DecodeError:
            return None
    steps: list[Step] = []
    for i, f in enumerate(formulas):
        la = match_schema(f)
        if la is not None:
            steps.append(la)
            continue
        if theory.is_axiom(f):
            steps.append(TheoryAxiom(f))
            continue
        found: Optional[Step] = None
        for a in range(i):
            fa = formulas[a]
            if not isinstance(fa, Imp) or not formulas_equal(fa.right, f):
                continue
            for b in range(i):
                if formulas_equal(fa.left, formulas[b]):
                    found = ModusPonens(a, b)
                    break
            if found is not None:
                break
        if found is None and isinstance(f, ForAll):
            for j in range(i):
                if formulas_equal(formulas[j], f.body):
                    found = Generalization(j, f.var)
                    break
        if found is None:
            return None
        steps.append(found)
    return tuple(steps)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def neg_collapse(f: Formula) -> Formula:
    """The canonical negation: strips one outer ~ instead of stacking two."""
    return f.body if isinstance(f, Not) else Not(f)


@dataclass(frozen=True)
class EnumerationResult:
    verdict: str  # "target first" | "negation first" | "neither"
    target_code: Optional[int]
    negation_code: Optional[int]
    codes_scanned: int


def enumerate_proofs(
    theory: TheoryLike,
    target: Formula,
    max_code: int,
    scheme: CodingScheme,
) -> EnumerationResult:
    """Scan all proof codes up to max_code for proofs of target or neg*(target)."""
    negation = neg_collapse(target)
    first_target: Optional[int] = None
    first_negation: Optional[int] = None
    for code in range(max_code + 1):
        if first_target is not None and first_negation is not None:
            break
        proof = decode_proof(theory, code, scheme)
        if proof is None:
            continue
        last = proof_steps(theory, proof)[-1]
        if first_target is None and formulas_equal(last, target):
            first_target = code
        if first_negation is None and formulas_equal(last, negation):
            first_negation = code
    if first_target is not None and (
        first_negation is None or first_target < first_negation
    ):
        verdict = "target first"
    elif first_negation is not None:
        verdict = "negation first"
    else:
        verdict = "neither"
    return EnumerationResult(verdict, first_target, first_negation, max_code + 1)


# ---------------------------------------------------------------------------
# Proof files
# ---------------------------------------------------------------------------

def _scan_args(text: str) -> list[tuple[str, str]]:
    """Split into ('brace', inner) and ('word', token) items.

    Braces balance, so formula arguments may contain code literals, which
    nest braces arbitrarily deep."""
    items: list[tuple[str, str]] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "}":
            raise ProofError(f"unbalanced '}}' at column {i}")
        if c == "{":
            level, j = 1, i + 1
            while j < n and level:
                if text[j] == "{":
                    level += 1
                elif text[j] == "}":
                    level -= 1
                j += 1
            if level:
                raise ProofError(f"unbalanced '{{' at column {i}")
            items.append(("brace", text[i + 1:j - 1]))
            i = j
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "{}":
                j += 1
            items.append(("word", text[i:j]))
            i = j
    return items


def parse_proof(text: str) -> Proof:
    """Parse the line-based proof format.

    LA <schema> <args>   schema instance; formula/term args in braces,
                         variable args as v<k>
    TA {formula}         theory axiom
    MP <i> <j>           modus ponens: step i proves the implication,
                         step j its antecedent (0-based)
    GEN <i> v<k>         generalization of step i over v<k>
    Blank lines and lines starting with # are skipped.
    """
    steps: list[Step] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        try:
            steps.append(_parse_step(head.upper(), rest.strip()))
        except (ParseError, ProofError, ValueError) as exc:
            raise ProofError(f"line {lineno}: {exc}") from exc
    return tuple(steps)


def _parse_step(head: str, rest: str) -> Step:
    if head == "TA":
        items = _scan_args(rest)
        if len(items) != 1 or items[0][0] != "brace":
            raise ProofError("TA takes one braced formula")
        return TheoryAxiom(parse_formula(items[0][1]))
    if head == "MP":
        i, j = rest.split()
        return ModusPonens(int(i), int(j))
    if head == "GEN":
        i, v = rest.split()
        if not v.startswith("v"):
            raise ProofError("GEN takes a step index and a variable")
        return Generalization(int(i), int(v[1:]))
    if head != "LA":
        raise ProofError(f"unknown step keyword {head}")
    name, _, argtext = rest.partition(" ")
    name = name.upper()
    if name not in SCHEMAS:
        raise ProofError(f"unknown schema {name}")
    kinds, _ = SCHEMAS[name]
    items = _scan_args(argtext)
    if len(items) != len(kinds):
        raise ProofError(f"{name} takes {len(kinds)} arguments, got {len(items)}")
    args: list = []
    for kind, (shape, payload) in zip(kinds, items):
        if kind == "V":
            if shape != "word" or not re.fullmatch(r"v[0-9]+", payload):
                raise ProofError(f"{name}: expected a variable, got {payload!r}")
            args.append(int(payload[1:]))
        elif shape != "brace":
            raise ProofError(f"{name}: expected a braced argument, got {payload!r}")
        elif kind == "F":
            args.append(parse_formula(payload))
        else:
            args.append(parse_term(payload))
    return LogicalAxiom(name, tuple(args))


def format_proof(proof: Sequence[Step]) -> str:
    lines: list[str] = []
    for step in proof:
        if isinstance(step, LogicalAxiom):
            parts = [f"LA {step.schema}"]
            for arg in step.args:
                if isinstance(arg, int):
                    parts.append(f"v{arg}")
                elif isinstance(arg, Formula):
                    parts.append("{" + print_formula(arg) + "}")
                else:
                    parts.append("{" + print_term(arg) + "}")
            lines.append(" ".join(parts))
        elif isinstance(step, TheoryAxiom):
            lines.append("TA {" + print_formula(step.formula) + "}")
        elif isinstance(step, ModusPonens):
            lines.append(f"MP {step.implication} {step.antecedent}")
        else:
            lines.append(f"GEN {step.premise} v{step.var}")
    return "\n".join(lines) + "\n"
