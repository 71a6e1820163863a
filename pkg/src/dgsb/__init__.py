"""Free weight-lambda differential algebras with operators: rewriting and Groebner-Shirshov bases."""

from .diff import d_apply, d_power, d_power_closed, op_apply
from .order import Cmp, compare, leading, lifted_leading, monicize
from .parsing import ParseError, parse_poly, parse_word, print_poly, print_word
from .poly import Poly, poly_mul
from .rewrite import (
    DiffPSchema,
    RotaBaxterSchema,
    Rule,
    RuleSet,
    StarWord,
    find_occurrences,
    is_normal,
    normalize_star,
    reduce,
    substitute,
)
from .gsb import cd_crosscheck, check_triviality, complete, composition, find_ambiguities
from .rota_baxter import enumerate_basis, rb_normal_form, rb_rules, verify_ambiguity_families
from .terms import STAR, Atom, Generator, OpApp, Operator, Signature, SignatureError, Word

__version__ = "0.1.0"
