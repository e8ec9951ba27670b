"""Equality in sequent calculi: a derivation kernel, cut elimination and bounded search."""
from .checker import CheckReport, Metrics, analyze, check, rank
from .derivation import Derivation, JoinSpec, PreconditionViolation, StructureError, infer
from .document import parse, parse_document, print_document
from .parser import ParseError, parse_formula, parse_sequent, parse_term
from .search import (
    BudgetInvalid, ExhaustedWithinBudget, Found, SearchBudget, certify_underivable,
    check_nonderivable_symmetry, prove,
)
from .syntax import Abstraction, Sequent, TermOrder, get_order, register_order
from .systems import SystemSpec, get_system

__version__ = "0.1.0"
