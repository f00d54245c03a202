"""Epsilon-substitution solving as a finite-injury construction over a tower of priority trees."""
from .critical import Existence, Induction, Predecessor
from .driver import SolveResult, VerificationError, extract_witness, solve, verify
from .dsl import parse_instance, print_instance
from .lang import SkolemFunction, numeral
from .subst import Q, EpsSubstitution
from .trees import FuelExhausted

__all__ = [
    "EpsSubstitution",
    "Existence",
    "FuelExhausted",
    "Induction",
    "Predecessor",
    "Q",
    "SkolemFunction",
    "SolveResult",
    "VerificationError",
    "extract_witness",
    "numeral",
    "parse_instance",
    "print_instance",
    "solve",
    "verify",
]
