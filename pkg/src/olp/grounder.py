"""Instantiate schematic rules over the constants of a program.

Equality is the only built-in and is decided syntactically on ground terms.
Compound terms are accepted only as names (rule labels and the arguments of
``prec``/``in``), one level deep; anything else would make the universe
infinite.
"""
from __future__ import annotations

import itertools
import warnings
from typing import Iterable, Optional

from .core import (
    EQUALITY,
    REGULAR,
    OrderedProgram,
    Rule,
    Term,
    NonFiniteUniverse,
    UnsafeRule,
)


def _constants(t: Term, out: set[Term]) -> None:
    if t.is_variable:
        return
    if not t.args:
        out.add(t)
        return
    for a in t.args:
        _constants(a, out)


def herbrand_constants(p: Iterable[Rule]) -> set[Term]:
    """Constants occurring anywhere in ``p`` (bare rule labels excluded)."""
    out: set[Term] = set()
    for r in p:
        if r.name is not None:
            for a in r.name.args:
                _constants(a, out)
        for l in r.literals():
            for a in l.atom.args:
                _constants(a, out)
    return out


def _check_finite(r: Rule) -> None:
    for l in r.literals():
        for a in l.atom.args:
            if a.args and (l.atom.kind in (REGULAR, EQUALITY) or a.depth() > 1):
                raise NonFiniteUniverse(f"function term {a} in {r}")
    if r.name is not None and r.name.depth() > 1:
        raise NonFiniteUniverse(f"nested rule name {r.name}")


def _evaluate_equalities(r: Rule) -> Optional[Rule]:
    """Drop true equalities (false ones under ``not``); None if the instance dies."""
    pbody = []
    for l in r.pbody:
        if l.atom.kind == EQUALITY:
            if l.atom.args[0] != l.atom.args[1]:
                return None
            continue
        pbody.append(l)
    nbody = []
    for l in r.nbody:
        if l.atom.kind == EQUALITY:
            if l.atom.args[0] == l.atom.args[1]:
                return None
            continue
        nbody.append(l)
    return Rule(r.head, tuple(pbody), tuple(nbody), r.name)


def ground_rule(r: Rule, universe: list[Term]) -> list[Rule]:
    _check_finite(r)
    variables = r.variables()
    if not variables:
        g = _evaluate_equalities(r)
        return [] if g is None else [g]
    if not universe:
        body_vars = {v for l in r.pbody + r.nbody for t in l.atom.args for v in t.variables()}
        head_vars = set() if r.head is None else {v for t in r.head.atom.args for v in t.variables()}
        if not head_vars <= body_vars:
            raise UnsafeRule(f"head variables of {r} do not occur in its body and the universe is empty")
        warnings.warn(f"empty Herbrand universe: {r} has no ground instances", stacklevel=2)
        return []
    out = []
    for values in itertools.product(universe, repeat=len(variables)):
        g = _evaluate_equalities(r.substitute(dict(zip(variables, values))))
        if g is not None:
            out.append(g)
    return out


def ground(p: OrderedProgram, constants: Optional[Iterable[Term]] = None) -> OrderedProgram:
    """Replace every schematic rule by its ground instances.

    ``constants`` overrides the universe; by default it is
    ``herbrand_constants(p)``.  Distinct instances of a named schematic rule
    must end up with distinct names, otherwise ``DuplicateName`` is raised.
    """
    universe = sorted(herbrand_constants(p) if constants is None else set(constants), key=str)
    rules = []
    for r in p:
        rules.extend(ground_rule(r, universe))
    return OrderedProgram(rules)
