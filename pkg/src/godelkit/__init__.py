"""Workbench for provability, coding, and independence constructions
over first-order arithmetic."""

from .coding import FULL, MICRO, SCHEMES, CodeOverflowError, DecodeError
from .syntax import ParseError, parse_formula, parse_term, print_formula
from .hierarchy import DELTA0, classify, classify_annotated, pi, sigma
from .evaluator import compile_delta0, eval_witnessed, evaluate
from .arithmetization import (
    Theory,
    extend,
    mk_axioms_pa,
    mk_con,
    mk_finite_theory,
    mk_prf,
    mk_prov,
    mk_syntax_predicates,
    parse_theory,
)
from .fixedpoint import FixedPoint, RosserSentence, diag_meta, diagonalize, mk_rosser
from .constructions import (
    ConstructionWarning,
    iterate_con,
    mk_prime,
    mk_simple,
    mk_theorem1,
    mk_twin_primes,
    skeleton_equiv,
)
from .proofs import check_proof, enumerate_proofs, parse_proof

__version__ = "0.1.0"
