"""Text output for programs and answer sets.

``native`` is the ``.olp`` syntax and reads back through the parser (with
``allow_control`` for compiled programs).  ``asp`` drops rule names so that
the text is accepted by answer-set systems supporting classical negation.
"""
from __future__ import annotations

from typing import Iterable

from .core import AnswerSet, Rule, format_answer_set
from .parser import format_program

DIALECTS = ("native", "asp")


def _asp_rule(r: Rule) -> str:
    body = [str(l) for l in r.pbody] + [f"not {l}" for l in r.nbody]
    head = "" if r.head is None else str(r.head)
    if not body:
        return f"{head}."
    return f"{head} :- {', '.join(body)}." if head else f":- {', '.join(body)}."


def emit(rules: Iterable[Rule], dialect: str = "native") -> str:
    if dialect == "native":
        return format_program(rules)
    if dialect == "asp":
        lines = [_asp_rule(r) for r in rules]
        return "".join(line + "\n" for line in lines)
    raise ValueError(f"unknown dialect {dialect!r}")


def emit_answer_sets(xss: Iterable[AnswerSet]) -> str:
    return "".join(format_answer_set(x) + "\n" for x in xss)
