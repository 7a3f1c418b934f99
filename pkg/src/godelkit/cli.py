"""Command-line frontend: parse, construct, classify, encode, evaluate, check.

Every command is deterministic: identical invocations produce byte-identical
stdout.  Results go to stdout, diagnostics and warnings to stderr.  Exit
status 0 on success, 1 on domain errors (parse failures, codes outside the
encoding's image, invalid files), 2 on usage errors.

Formula arguments accept a file path, ``-`` for stdin, or inline concrete
syntax (anything that is not an existing file is parsed as a formula).
Codes print as decimal strings; a formula whose code would exceed the bit
budget gets an ``infeasible`` note with the estimated size instead.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import signal
import sys
import warnings
from typing import Optional

from .arithmetization import (
    CON_CORE_PATH,
    Theory,
    extend,
    format_theory,
    mk_con,
    parse_theory,
)
from .coding import (
    DEFAULT_BIT_LIMIT,
    SCHEMES,
    CodeOverflowError,
    CodingScheme,
    DecodeError,
    code_bits_estimate,
)
from .constructions import (
    iterate_con,
    mk_simple,
    mk_theorem1,
    skeleton_equiv,
)
from .evaluator import eval_witnessed, evaluate
from .fixedpoint import mk_rosser
from .hierarchy import (
    DELTA0,
    Classification,
    classify,
    classify_annotated,
    pi,
    sigma,
)
from .proofs import (
    ProofError,
    check_proof,
    encode_proof,
    enumerate_proofs,
    format_proof,
    parse_proof,
    proof_steps,
)
from .syntax import (
    Formula,
    ParseError,
    depth,
    free_vars,
    node_count,
    parse_formula,
    print_formula,
)

_DEFAULT_BUDGET = 1_000_000


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

def _read_input(spec: str) -> str:
    if spec == "-":
        return sys.stdin.read()
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return fh.read()
    return spec


def _load_formula(spec: str) -> Formula:
    return parse_formula(_read_input(spec).strip())


def _load_theory(path: str) -> Theory:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_theory(fh.read())


_CLASS_RE = re.compile(r"^(?:Delta0|Delta\(0\)|(Sigma|Pi)\((\d+)\))$")


def _parse_class(text: str) -> Classification:
    m = _CLASS_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad classification {text!r}; expected Delta0, "
                         "Sigma(k), or Pi(k)")
    if m.group(1) is None:
        return DELTA0
    level = int(m.group(2))
    return sigma(level) if m.group(1) == "Sigma" else pi(level)


def _parse_path(text: str) -> tuple[int, ...]:
    if text == "-":
        return ()
    try:
        return tuple(int(part) for part in text.split("."))
    except ValueError:
        raise ValueError(f"bad path {text!r}; expected e.g. 0.1.0 or -")


def _load_annotation(path: str) -> dict[tuple[int, ...], Classification]:
    """Lines of '<path> <class>', e.g. '0.1 Delta(0)'; '-' is the root."""
    annotation: dict[tuple[int, ...], Classification] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                where, what = line.split(None, 1)
                annotation[_parse_path(where)] = _parse_class(what)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return annotation


def _load_witnesses(path: str) -> dict[tuple[int, ...], int]:
    """Lines of '<path> <value>' assigning witnesses to unbounded exists."""
    plan: dict[tuple[int, ...], int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                where, value = line.split(None, 1)
                plan[_parse_path(where)] = int(value)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return plan


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _code_entry(scheme: CodingScheme, f: Formula, bit_limit: int) -> dict:
    """Decimal code, or an infeasibility note with the estimated size."""
    bits = code_bits_estimate(scheme, f)
    if bits > bit_limit:
        return {"infeasible": True, "bits_estimate": bits}
    return {"code": str(scheme.formula_code(f, bit_limit))}


def _code_text(entry: dict) -> str:
    if entry.get("infeasible"):
        bits = entry["bits_estimate"]
        if bits >= 1 << 62:  # the estimator saturates here
            return "infeasible (>=2**62 bits estimated)"
        return f"infeasible (~{bits} bits estimated)"
    return entry["code"]


def _print_warnings(caught) -> None:
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _cmd_parse(args) -> int:
    f = _load_formula(args.input)
    info = {
        "formula": print_formula(f),
        "nodes": node_count(f),
        "depth": depth(f),
        "free_vars": sorted(free_vars(f)),
    }
    if args.output == "json":
        _emit_json(info)
    else:
        print(f"ok: {info['formula']}")
        print(f"nodes: {info['nodes']}")
        print(f"depth: {info['depth']}")
        names = " ".join(f"v{i}" for i in info["free_vars"])
        print(f"free: {names}" if names else "free: none")
    return 0


def _cmd_print(args) -> int:
    f = _load_formula(args.input)
    if args.output == "json":
        _emit_json({"formula": print_formula(f)})
    else:
        print(print_formula(f))
    return 0


def _cmd_godel(args) -> int:
    scheme = SCHEMES[args.scheme]
    if args.decode is not None:
        f = scheme.decode_formula(int(args.decode))
        if args.output == "json":
            _emit_json({"formula": print_formula(f)})
        else:
            print(print_formula(f))
        return 0
    if args.input is None:
        raise ValueError("godel needs a formula or --decode")
    f = _load_formula(args.input)
    entry = _code_entry(scheme, f, args.bit_limit)
    if args.output == "json":
        _emit_json(entry)
    else:
        print(f"code: {_code_text(entry)}")
    return 0


def _cmd_classify(args) -> int:
    f = _load_formula(args.input)
    if args.annotated:
        cls = classify_annotated(f, _load_annotation(args.annotated))
    else:
        cls = classify(f)
    if args.output == "json":
        _emit_json({"classification": str(cls)})
    else:
        print(str(cls))
    return 0


def _cmd_eval(args) -> int:
    f = _load_formula(args.input)
    if args.witness:
        result = eval_witnessed(f, _load_witnesses(args.witness), args.budget)
    else:
        result = evaluate(f, args.budget)
    if args.output == "json":
        _emit_json({"verdict": result.verdict, "reason": result.reason})
    else:
        print(str(result))
    return 0


def _cmd_mk_con(args) -> int:
    theory = _load_theory(args.theory)
    con = mk_con(theory)
    cls = classify_annotated(con, {CON_CORE_PATH: DELTA0})
    entry = _code_entry(theory.scheme, con, args.bit_limit)
    if args.output == "json":
        _emit_json({"con": print_formula(con), "classification": str(cls), **entry})
    else:
        print(f"con: {print_formula(con)}")
        print(f"code: {_code_text(entry)}")
        print(f"classification: {cls}")
    return 0


def _cmd_mk_rosser(args) -> int:
    theory = _load_theory(args.theory)
    rosser = mk_rosser(theory)
    cls = rosser.classification()
    entry = _code_entry(theory.scheme, rosser.sentence, args.bit_limit)
    if args.output == "json":
        _emit_json({
            "rho": print_formula(rosser.sentence),
            "classification": str(cls),
            **entry,
        })
    else:
        print(f"rho: {print_formula(rosser.sentence)}")
        print(f"code: {_code_text(entry)}")
        print(f"classification: {cls}")
    return 0


def _cmd_mk_independent(args) -> int:
    theory = _load_theory(args.theory)
    target = _load_formula(args.target)
    target_annotation = (
        _load_annotation(args.annotated) if args.annotated else None
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if args.construction == "simple":
            built = mk_simple(target, theory, target_annotation)
            components = {
                "gamma": built.gamma,
                "alpha": built.alpha,
                "beta": built.beta,
            }
            verdict = skeleton_equiv(
                built.phi, built.gamma, [built.alpha, built.beta]
            )
        else:
            built = mk_theorem1(theory, target, target_annotation)
            components = {
                "psi": built.psi,
                "rho": built.rosser.sentence,
                "con": built.con,
            }
            verdict = skeleton_equiv(
                built.phi, built.psi, [built.rosser.sentence, built.con]
            )
    _print_warnings(caught)
    cls = built.classification()
    obj = {"kind": args.construction}
    for name, f in components.items():
        obj[name] = print_formula(f)
    obj["phi"] = print_formula(built.phi)
    obj["codes"] = {
        name: _code_entry(theory.scheme, f, args.bit_limit)
        for name, f in {**components, "phi": built.phi}.items()
    }
    obj["classification"] = str(cls)
    obj["skeleton_equiv"] = verdict
    if args.output == "json":
        _emit_json({"construction": obj})
    else:
        for name, f in components.items():
            print(f"{name}: {print_formula(f)}")
        print(f"phi: {obj['phi']}")
        for name in obj["codes"]:
            print(f"code {name}: {_code_text(obj['codes'][name])}")
        print(f"classification: {cls}")
        print(f"skeleton_equiv: {verdict}")
    return 0


def _cmd_iterate_con(args) -> int:
    theory = _load_theory(args.theory)
    steps = []
    current = theory
    for k in range(args.steps + 1):
        if k > 0:
            current = extend(current, mk_con(current))
        steps.append({
            "step": k,
            "classification": str(classify(current.axioms_formula)),
            "axioms_formula_nodes": node_count(current.axioms_formula),
        })
    if args.write:
        with open(args.write, "w", encoding="utf-8") as fh:
            fh.write(format_theory(current))
    if args.output == "json":
        _emit_json({"name": current.name, "steps": steps})
    else:
        for s in steps:
            print(f"step {s['step']}: {s['classification']}, "
                  f"{s['axioms_formula_nodes']} axiom-formula nodes")
    return 0


def _cmd_check_proof(args) -> int:
    theory = _load_theory(args.theory)
    proof = parse_proof(_read_input(args.proof))
    conclusion = _load_formula(args.conclusion) if args.conclusion else None
    ok = check_proof(theory, proof, conclusion)
    result = {"valid": ok}
    if ok:
        result["conclusion"] = print_formula(proof_steps(theory, proof)[-1])
        if args.code:
            result["code"] = str(encode_proof(theory, proof, theory.scheme))
    if args.output == "json":
        _emit_json(result)
    else:
        print("valid" if ok else "invalid")
        if ok:
            print(f"conclusion: {result['conclusion']}")
            if args.code:
                print(f"code: {result['code']}")
    return 0


def _cmd_enumerate(args) -> int:
    theory = _load_theory(args.theory)
    target = _load_formula(args.target)
    result = enumerate_proofs(theory, target, args.max_code, theory.scheme)
    obj = {
        "verdict": result.verdict,
        "target_code": result.target_code,
        "negation_code": result.negation_code,
        "codes_scanned": result.codes_scanned,
    }
    if args.output == "json":
        _emit_json(obj)
    else:
        def show(v):
            return "none" if v is None else str(v)
        print(f"verdict: {result.verdict}")
        print(f"target code: {show(result.target_code)}")
        print(f"negation code: {show(result.negation_code)}")
        print(f"codes scanned: {result.codes_scanned}")
    return 0


def _cmd_skeleton(args) -> int:
    f = _load_formula(args.first)
    g = _load_formula(args.second)
    assumptions = [_load_formula(a) for a in (args.assume or [])]
    verdict = skeleton_equiv(f, g, assumptions)
    if args.output == "json":
        _emit_json({"equivalent": verdict})
    else:
        print("equivalent" if verdict else "not equivalent")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="godelkit",
        description="workbench for provability, coding, and independence "
                    "constructions over first-order arithmetic",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scheme=False, budget=False, bits=False):
        p.add_argument("--output", choices=("text", "json"), default="text")
        if scheme:
            p.add_argument("--scheme", choices=tuple(SCHEMES), default="full")
        if budget:
            default = int(os.environ.get("GODELKIT_BUDGET", _DEFAULT_BUDGET))
            p.add_argument("--budget", type=int, default=default,
                           help="search budget for bounded quantifiers")
        if bits:
            p.add_argument("--bit-limit", type=int, default=DEFAULT_BIT_LIMIT,
                           help="largest code size to actually compute")

    p = sub.add_parser("parse", help="parse a formula and report its shape")
    p.add_argument("input", help="file, '-' for stdin, or inline formula")
    common(p)
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("print", help="parse and reprint in canonical form")
    p.add_argument("input")
    common(p)
    p.set_defaults(fn=_cmd_print)

    p = sub.add_parser("godel", help="encode a formula to its code, or decode")
    p.add_argument("input", nargs="?")
    p.add_argument("--decode", metavar="CODE",
                   help="decimal code to decode instead of encoding")
    common(p, scheme=True, bits=True)
    p.set_defaults(fn=_cmd_godel)

    p = sub.add_parser("classify", help="arithmetical-hierarchy classification")
    p.add_argument("input")
    p.add_argument("--annotated", metavar="FILE",
                   help="subformula classifications, lines '<path> <class>'")
    common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("eval", help="evaluate a sentence over the naturals")
    p.add_argument("input")
    p.add_argument("--witness", metavar="FILE",
                   help="witness values, lines '<path> <value>'")
    common(p, budget=True)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("mk-con", help="consistency sentence of a theory")
    p.add_argument("--theory", required=True, metavar="FILE")
    common(p, bits=True)
    p.set_defaults(fn=_cmd_mk_con)

    p = sub.add_parser("mk-rosser", help="Rosser sentence of a theory")
    p.add_argument("--theory", required=True, metavar="FILE")
    common(p, bits=True)
    p.set_defaults(fn=_cmd_mk_rosser)

    p = sub.add_parser(
        "mk-independent",
        help="conditioned sentence independent of the theory",
    )
    p.add_argument("--construction", choices=("simple", "rosser"),
                   required=True)
    p.add_argument("--theory", required=True, metavar="FILE")
    p.add_argument("--target", required=True, metavar="FILE",
                   help="the sentence whose truth value should stay open")
    p.add_argument("--annotated", metavar="FILE",
                   help="subformula classifications for the target")
    common(p, bits=True)
    p.set_defaults(fn=_cmd_mk_independent)

    p = sub.add_parser("iterate-con", help="climb the tower T, T+Con(T), ...")
    p.add_argument("--theory", required=True, metavar="FILE")
    p.add_argument("-n", "--steps", type=int, required=True)
    p.add_argument("--write", metavar="FILE",
                   help="write the final theory file here")
    common(p)
    p.set_defaults(fn=_cmd_iterate_con)

    p = sub.add_parser("check-proof", help="check a proof file")
    p.add_argument("proof", help="proof file, '-' for stdin")
    p.add_argument("--theory", required=True, metavar="FILE")
    p.add_argument("--conclusion", metavar="FORMULA",
                   help="require the proof to end at this formula")
    p.add_argument("--code", action="store_true",
                   help="also print the proof's sequence code")
    common(p)
    p.set_defaults(fn=_cmd_check_proof)

    p = sub.add_parser(
        "enumerate",
        help="scan proof codes for a target sentence and its negation",
    )
    p.add_argument("--theory", required=True, metavar="FILE")
    p.add_argument("--target", required=True, metavar="FORMULA")
    p.add_argument("--max-code", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser(
        "skeleton",
        help="propositional equivalence under assumptions",
    )
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--assume", action="append", metavar="FORMULA")
    common(p)
    p.set_defaults(fn=_cmd_skeleton)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    if hasattr(signal, "SIGPIPE"):
        signal.signal(signal.SIGPIPE, signal.SIG_DFL)
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, DecodeError, CodeOverflowError, ProofError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
