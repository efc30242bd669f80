"""Minimal QUBO compilation of Max 3-SAT and cubic pseudo-Boolean objectives."""

from .bounds import penalty_lower_bound_oracle
from .cnf import Clause, CnfInstance, Literal, count_satisfied, parse_dimacs, random_3sat, to_dimacs
from .cover import solve_min_cover
from .poly import Polynomial, build_objective, clause_reward, evaluate
from .qubo_io import export_qubo, import_qubo, parse_cubic_poly
from .quadratize import (CubicTerm, QuboModel, SubstitutionPlan, assign_terms, dominance_filter,
                         extract_cubic_terms, pair_frequencies, penalty_lower_bound,
                         plan_substitution, quadratize, rosenberg_penalty)
from .solver import Solution, SolveReport, brute_force, decode, tabu_search

__version__ = "0.1.0"

__all__ = [
    "Clause", "CnfInstance", "CubicTerm", "Literal", "Polynomial", "QuboModel", "Solution",
    "SolveReport", "SubstitutionPlan", "assign_terms", "brute_force", "build_objective",
    "clause_reward", "count_satisfied", "decode", "dominance_filter", "evaluate",
    "export_qubo", "extract_cubic_terms", "import_qubo", "pair_frequencies", "parse_cubic_poly",
    "parse_dimacs", "penalty_lower_bound", "penalty_lower_bound_oracle", "plan_substitution",
    "quadratize", "random_3sat", "rosenberg_penalty", "solve_min_cover", "tabu_search", "to_dimacs",
]
