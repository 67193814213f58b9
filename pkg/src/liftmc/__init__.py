"""Exact lifted model counting for two-variable logic with cardinality
constraints, counting quantifiers and an acyclicity axiom."""

from .parser import parse, parse_file
from .normalize import (lower_counting, lower_source_sink, normalize,
                        skolemize, to_nnf)
from .oracle import is_acyclic, oracle_wfomc, OracleCapError
from .pipeline import count
from .dag import count_dags, count_dags_table
from .syntax import (Problem, ProblemError, ParseError, UnsupportedError,
                     ValidationError)

__all__ = [
    "parse", "parse_file", "normalize", "to_nnf", "skolemize",
    "lower_counting", "lower_source_sink", "oracle_wfomc", "is_acyclic",
    "OracleCapError", "count", "count_dags", "count_dags_table",
    "Problem", "ProblemError", "ParseError", "UnsupportedError",
    "ValidationError",
]
