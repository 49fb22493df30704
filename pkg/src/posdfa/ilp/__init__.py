"""Integer programming encoding of the minimum-count DFA problem."""
from .encoder import (
    assignment_from_dfa,
    build_model,
    decode_solution,
    expected_constraint_count,
    expected_variable_count,
)
from .lpformat import emit_lp, format_solution, parse_solution
from .model import IlpConstraint, IlpModel, IlpSolution, IlpVariable
from .solvers import (
    ExhaustiveSolver,
    ExternalSolver,
    SearchResult,
    binary_search_min,
    decide_with_solver,
    highs_command,
    query_bound,
    solve_external,
    solve_min,
)

__all__ = [
    "ExhaustiveSolver",
    "ExternalSolver",
    "IlpConstraint",
    "IlpModel",
    "IlpSolution",
    "IlpVariable",
    "SearchResult",
    "assignment_from_dfa",
    "binary_search_min",
    "build_model",
    "decide_with_solver",
    "decode_solution",
    "emit_lp",
    "expected_constraint_count",
    "expected_variable_count",
    "format_solution",
    "highs_command",
    "parse_solution",
    "query_bound",
    "solve_external",
    "solve_min",
]
