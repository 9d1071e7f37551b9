"""Slant (Gokigen Naname) solvers, verifiers and the Hamiltonian-cycle reduction."""

from .board import (BACKSLASH, EMPTY, SLASH, Assignment, Board, ParseError, parse_assignment,
                    parse_board, serialize_assignment, serialize_board)
from .result import BudgetExceeded, SolveResult, Status
from .validity import check_acyclic, check_solution, is_solution

__all__ = [
    "BACKSLASH", "EMPTY", "SLASH", "Assignment", "Board", "ParseError", "parse_assignment",
    "parse_board", "serialize_assignment", "serialize_board", "BudgetExceeded", "SolveResult",
    "Status", "check_acyclic", "check_solution", "is_solution",
]
