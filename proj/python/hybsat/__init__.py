"""Hybrid local-search / clause-learning SAT solver."""

from hybsat._core import (
    Formula,
    SolveOutcome,
    enumerate_mus,
    from_clauses,
    parse_dimacs,
    parse_dimacs_file,
    pigeonhole_dimacs,
    random_3sat_dimacs,
    solve_cdcl,
    solve_hybrid,
    to_dimacs,
    verify_model,
)

__all__ = [
    "Formula",
    "SolveOutcome",
    "enumerate_mus",
    "from_clauses",
    "parse_dimacs",
    "parse_dimacs_file",
    "pigeonhole_dimacs",
    "random_3sat_dimacs",
    "solve_cdcl",
    "solve_hybrid",
    "to_dimacs",
    "verify_model",
]
