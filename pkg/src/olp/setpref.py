"""Preferences between named sets of rules.

Membership is given extensionally by facts ``in(n, m)`` (or the sugar
``set m = {n1, n2}.``), and ``prec`` may relate two set names.  A set is
applied once all of its members are applied and blocked once one of them is
blocked.  Set names get their own ``ok``/``okwrt`` rules built from the same
strategy as rule names, plus transitivity and asymmetry of ``prec`` over set
names.

A member rule may fire only once one of the sets containing it is ``ok``
(``gating="any"``).  ``gating="all"`` waits for every containing set instead;
with overlapping sets that variant can deadlock, e.g. when a rule sits both
in the least and in the most preferred set.
"""
from __future__ import annotations

from typing import Optional

from .compiler import (
    CompiledProgram,
    Provenance,
    Strategy,
    _dedup_sorted,
    _translate_tagged,
    default_okwrt,
    preferred_from_compiled,
    source_language,
)
from .core import (
    CONTROL,
    PREFERENCE,
    AnswerSet,
    Literal,
    NameClash,
    OrderedProgram,
    Rule,
    Term,
    UnknownMember,
    applied,
    blocked,
    desugar_constraints,
    ok,
    okwrt,
    prec,
)
from .solver import DEFAULT_MAX_UNDECIDED


def memberships(p: OrderedProgram) -> dict[Term, list[Term]]:
    """Set name -> member rule names, in order of appearance."""
    sets: dict[Term, list[Term]] = {}
    for r in p:
        h = r.head
        if h is None or h.atom.kind != CONTROL or h.atom.name != "in":
            continue
        if not r.is_fact or h.negated:
            raise ValueError(f"set membership must be given by facts: {r}")
        n, m = h.atom.args
        sets.setdefault(m, [])
        if n not in sets[m]:
            sets[m].append(n)
    return sets


def _check(p: OrderedProgram, sets: dict[Term, list[Term]]) -> None:
    rule_names = set(p.names)
    clash = rule_names & set(sets)
    if clash:
        raise NameClash(f"names used both for rules and sets: {sorted(map(str, clash))}")
    for m, members in sets.items():
        for n in members:
            if n not in rule_names:
                raise UnknownMember(f"{n} in set {m} is not a rule name")
    for l in p.literals():
        if l.atom.kind == PREFERENCE:
            s, t = l.atom.args
            if (s in sets) != (t in sets):
                raise NameClash(f"{l.atom} relates a rule name with a set name")


def compile_sets(p: OrderedProgram, strategy: Strategy = default_okwrt, gating: str = "any") -> CompiledProgram:
    if gating not in ("any", "all"):
        raise ValueError("gating is 'any' or 'all'")
    p = desugar_constraints(p)
    if not p.is_ground:
        raise ValueError("compile_sets expects a ground program")
    sets = memberships(p)
    _check(p, sets)
    names = p.names
    set_names = list(sets)
    containing: dict[Term, list[Term]] = {}
    for m, members in sets.items():
        for n in members:
            containing.setdefault(n, []).append(m)

    tagged: list[tuple[Provenance, Rule]] = []
    for r in p:
        if r.name is None:
            tagged.append((Provenance("copy", ()), r))
            continue
        gates = [Literal(ok(m)) for m in containing.get(r.name, [])]
        if not gates:
            extra = [()]
        elif gating == "any":
            extra = [(g,) for g in gates]
        else:
            extra = [tuple(gates)]
        for schema, tr in _translate_tagged(r, names, strategy, extra):
            tagged.append((Provenance(schema, (r.name,)), tr))

    for m, members in sets.items():
        src = (m,) + tuple(members)
        tagged.append((Provenance("sa", src), Rule(Literal(applied(m)), tuple(Literal(applied(n)) for n in members))))
        for n in members:
            tagged.append((Provenance("sb", src), Rule(Literal(blocked(m)), (Literal(blocked(n)),))))
        wrt = tuple(Literal(okwrt(m, m2)) for m2 in set_names)
        tagged.append((Provenance("c1", src), Rule(Literal(ok(m)), wrt)))
        for m2 in set_names:
            for schema, tr in strategy(m, m2):
                tagged.append((Provenance(schema, src), tr))
        for m2 in set_names:
            for m3 in set_names:
                tagged.append((Provenance("t", src), Rule(Literal(prec(m, m3)), (Literal(prec(m, m2)), Literal(prec(m2, m3))))))
        for m2 in set_names:
            tagged.append((Provenance("as", src), Rule(Literal(prec(m2, m), True), (Literal(prec(m, m2)),))))

    prov, rules = _dedup_sorted(tagged)
    lang = source_language(p)
    lang = type(lang)(lang.atoms, lang.names | frozenset(set_names))
    return CompiledProgram(OrderedProgram(rules), prov, lang, len(tagged))


def preferred_answer_sets_sets(p: OrderedProgram, gating: str = "any",
                               max_undecided: Optional[int] = DEFAULT_MAX_UNDECIDED) -> list[AnswerSet]:
    return preferred_from_compiled(compile_sets(p, gating=gating), max_undecided)
