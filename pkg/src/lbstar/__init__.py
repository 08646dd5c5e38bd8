"""Polynomial-time provability for the Lambek calculus with bracket modalities."""
from .decider import Decision, bench_family, decide, is_derivable
from .syntax import Derivation, ParseError, Sequent, check_derivation, parse_formula, parse_sequent, print_sequent

__all__ = [
    "Decision",
    "Derivation",
    "ParseError",
    "Sequent",
    "bench_family",
    "check_derivation",
    "decide",
    "is_derivable",
    "parse_formula",
    "parse_sequent",
    "print_sequent",
]
