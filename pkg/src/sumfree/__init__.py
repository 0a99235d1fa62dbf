"""Exact-rational tools for extremal k-sum-free sets.

Verification of explicit interval-union examples, exact LP based global
search for maximal configurations, the discrete f(n, k) solver, and the
mechanical certificate for the 1/2 - 1/114 measure bound.
"""

__version__ = "0.1.0"

from .rationals import (Rational, RationalParseError, ZeroDenominatorError,
                        make_rational, parse_rational, format_rational)
from .intervals import Interval, IntervalUnion, Witness, is_k_sum_free, parse_union, format_union
from .lp import LinearProgram, Constraint, LPResult, solve, check_certificate
from .search import (Configuration, DisjunctionPattern, SearchResult,
                     build_pattern_lp, maximize_measure, mu_formula)
from .discrete import forbidden_triples, f_max, enumerate_maximum_sets, discretize
from .certify import derive_delta, check_chain, sumset_bound_harness

__all__ = [
    "Rational", "RationalParseError", "ZeroDenominatorError",
    "make_rational", "parse_rational", "format_rational",
    "Interval", "IntervalUnion", "Witness", "is_k_sum_free", "parse_union",
    "format_union", "LinearProgram", "Constraint", "LPResult", "solve",
    "check_certificate", "Configuration", "DisjunctionPattern", "SearchResult",
    "build_pattern_lp", "maximize_measure", "mu_formula", "forbidden_triples",
    "f_max", "enumerate_maximum_sets", "discretize", "derive_delta",
    "check_chain", "sumset_bound_harness",
]
