"""Ordered logic programs with preferences, compiled to extended logic programs."""
from .compiler import CompiledProgram, compile_program, preferred_answer_sets, project
from .core import LIT, Literal, OrderedProgram, Rule, Term, atom, format_answer_set, lit, neg, prec
from .grounder import ground
from .parser import format_program, parse_program
from .setpref import compile_sets, preferred_answer_sets_sets
from .solver import answer_sets, generating_rules, is_answer_set

__all__ = [
    "LIT", "CompiledProgram", "Literal", "OrderedProgram", "Rule", "Term",
    "answer_sets", "atom", "compile_program", "compile_sets", "format_answer_set",
    "format_program", "generating_rules", "ground", "is_answer_set", "lit", "neg",
    "parse_program", "prec", "preferred_answer_sets", "preferred_answer_sets_sets", "project",
]
