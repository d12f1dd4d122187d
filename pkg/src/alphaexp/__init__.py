"""Digit expansions in bases alpha from Q(i) with digits {0, ..., |a0|-1}."""

from .complexexp import ComplexInput, approximate_expansion, lambda_map, numeric_evaluate, sqrt2
from .digitarith import add, multiply
from .errors import AlphaExpError, DomainError, PrecisionError, ResourceError
from .finiteness import decide_finiteness, has_finiteness_property
from .gaussian import GaussInt, GaussRat, factor, valuation
from .language import branch_digits, enumerate_level, length_bounds
from .numsys import (
    Expansion,
    LatticePoint,
    NumberSystem,
    evaluate,
    expand,
    format_expansion,
    integer_expansion,
    make_number_system,
    parse_expansion,
    to_lattice,
    validate_expansion,
)
from .padic import Ambinumber, ambi_expansion, check_convergence, expansion_of_minus_one

__all__ = [
    "AlphaExpError",
    "Ambinumber",
    "ComplexInput",
    "DomainError",
    "Expansion",
    "GaussInt",
    "GaussRat",
    "LatticePoint",
    "NumberSystem",
    "PrecisionError",
    "ResourceError",
    "add",
    "ambi_expansion",
    "approximate_expansion",
    "branch_digits",
    "check_convergence",
    "decide_finiteness",
    "enumerate_level",
    "evaluate",
    "expand",
    "expansion_of_minus_one",
    "factor",
    "format_expansion",
    "has_finiteness_property",
    "integer_expansion",
    "lambda_map",
    "length_bounds",
    "make_number_system",
    "multiply",
    "numeric_evaluate",
    "parse_expansion",
    "sqrt2",
    "to_lattice",
    "valuation",
    "validate_expansion",
]
