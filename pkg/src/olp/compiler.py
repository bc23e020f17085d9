"""Compile ordered logic programs into standard extended logic programs.

Each named rule ``r`` becomes the rule family below (``n`` is the name of
``r``, primes range over all named rules)::

    a1   head(r)        <- applied(n)
    a2   applied(n)     <- ok(n), body(r)
    b1   blocked(n)     <- ok(n), not L          for L in pbody(r)
    b2   blocked(n)     <- ok(n), L              for L in nbody(r)
    c1   ok(n)          <- okwrt(n, n1), ..., okwrt(n, nk)
    c2   okwrt(n, n')   <- not prec(n, n')
    c3   okwrt(n, n')   <- prec(n, n'), applied(n')
    c4   okwrt(n, n')   <- prec(n, n'), blocked(n')
    t    prec(n, n'')   <- prec(n, n'), prec(n', n'')
    as   -prec(n', n)   <- prec(n, n')

Unnamed rules are copied unchanged.  The ``okwrt`` rules (c2-c4) encode the
preference strategy and come from a single replaceable function.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .core import (
    CONTROL,
    LIT,
    PREFERENCE,
    REGULAR,
    AnswerSet,
    Atom,
    Literal,
    OrderedProgram,
    Rule,
    Term,
    UnnamedRule,
    answer_set_key,
    applied,
    blocked,
    desugar_constraints,
    ok,
    okwrt,
    prec,
)
from .solver import DEFAULT_MAX_UNDECIDED, answer_sets

SCHEMA_ORDER = ("a1", "a2", "b1", "b2", "c1", "c2", "c3", "c4", "t", "as", "copy")

Strategy = Callable[[Term, Term], list[tuple[str, Rule]]]


def default_okwrt(n: Term, m: Term) -> list[tuple[str, Rule]]:
    """``okwrt(n, m)`` holds once ``m`` is not preferred to ``n`` or ``m`` has been decided."""
    w = Literal(okwrt(n, m))
    p = Literal(prec(n, m))
    return [
        ("c2", Rule(w, (), (p,))),
        ("c3", Rule(w, (p, Literal(applied(m))))),
        ("c4", Rule(w, (p, Literal(blocked(m))))),
    ]


@dataclass(frozen=True)
class Provenance:
    schema: str
    source: tuple[Term, ...]


@dataclass(frozen=True)
class Language:
    """Atom inventory of the source language: regular atoms plus ``prec`` over names."""

    atoms: frozenset
    names: frozenset

    def __contains__(self, a: Atom) -> bool:
        if a.kind == REGULAR:
            return a in self.atoms
        if a.kind == PREFERENCE:
            return all(x in self.names for x in a.args)
        return False


@dataclass(frozen=True)
class CompiledProgram:
    program: OrderedProgram
    provenance: tuple[Provenance, ...]
    language: Language
    # rule count before structural deduplication
    raw_size: int

    def __iter__(self):
        return iter(self.program)

    def __len__(self):
        return len(self.program)

    def tagged(self) -> list[tuple[Provenance, Rule]]:
        return list(zip(self.provenance, self.program.rules))

    def rules_for(self, name: Term, schemas: Iterable[str]) -> list[Rule]:
        schemas = set(schemas)
        return [
            r for pv, r in self.tagged()
            if pv.schema in schemas and pv.source[:1] == (name,)
        ]


def _translate_tagged(r: Rule, names: list[Term], strategy: Strategy,
                      extra_ok: Iterable[tuple[Literal, ...]] = ((),)) -> list[tuple[str, Rule]]:
    if r.name is None:
        raise UnnamedRule(f"cannot translate unnamed rule {r}")
    if not r.is_ground:
        raise ValueError(f"rule is not ground: {r}")
    n = r.name
    ap, bl, okn = Literal(applied(n)), Literal(blocked(n)), Literal(ok(n))
    out = [
        ("a1", Rule(r.head, (ap,))),
        ("a2", Rule(ap, (okn,) + r.pbody, r.nbody)),
    ]
    out += [("b1", Rule(bl, (okn,), (l,))) for l in r.pbody]
    out += [("b2", Rule(bl, (okn, l))) for l in r.nbody]
    wrt = tuple(Literal(okwrt(n, m)) for m in names)
    out += [("c1", Rule(okn, wrt + gate)) for gate in extra_ok]
    for m in names:
        out += strategy(n, m)
    for m in names:
        for m2 in names:
            out.append(("t", Rule(Literal(prec(n, m2)), (Literal(prec(n, m)), Literal(prec(m, m2))))))
    for m in names:
        out.append(("as", Rule(Literal(prec(m, n), True), (Literal(prec(n, m)),))))
    return out


def translate_rule(r: Rule, all_named: Iterable[Rule], strategy: Strategy = default_okwrt) -> list[Rule]:
    names = [x.name for x in all_named if x.name is not None]
    return [rule for _, rule in _translate_tagged(r, names, strategy)]


def expected_size(r: Rule, k: int) -> int:
    """Rules produced for ``r`` when ``k`` rules are named."""
    return 3 + len(r.pbody) + len(r.nbody) + 4 * k + k * k


def _dedup_sorted(tagged: list[tuple[Provenance, Rule]]) -> tuple[tuple[Provenance, ...], tuple[Rule, ...]]:
    order = {s: i for i, s in enumerate(SCHEMA_ORDER)}
    indexed = sorted(enumerate(tagged), key=lambda it: (order.get(it[1][0].schema, len(order)), it[0]))
    seen: set = set()
    prov, rules = [], []
    for _, (pv, r) in indexed:
        key = (r.head, frozenset(r.pbody), frozenset(r.nbody))
        if key in seen:
            continue
        seen.add(key)
        prov.append(pv)
        rules.append(r)
    return tuple(prov), tuple(rules)


def source_language(p: OrderedProgram) -> Language:
    atoms = frozenset(a for a in p.atoms() if a.kind == REGULAR)
    names = frozenset(r.name for r in p if r.name is not None)
    return Language(atoms, names)


def compile_program(p: OrderedProgram, strategy: Strategy = default_okwrt) -> CompiledProgram:
    """The translated program over the extended language (named rules only are translated)."""
    p = desugar_constraints(p)
    if not p.is_ground:
        raise ValueError("compile expects a ground program")
    named = [r for r in p if r.name is not None]
    names = [r.name for r in named]
    tagged: list[tuple[Provenance, Rule]] = []
    for r in p:
        if r.name is None:
            tagged.append((Provenance("copy", ()), r))
            continue
        for schema, tr in _translate_tagged(r, names, strategy):
            tagged.append((Provenance(schema, (r.name,)), tr))
    prov, rules = _dedup_sorted(tagged)
    return CompiledProgram(OrderedProgram(rules), prov, source_language(p), len(tagged))


# the name `compile` shadows a builtin inside this module only
compile = compile_program


def project(ys: AnswerSet, lang: Optional[Language] = None) -> AnswerSet:
    """``Y`` restricted to the source language; Lit stays Lit."""
    if ys is LIT:
        return LIT
    if lang is None:
        return frozenset(l for l in ys if l.atom.kind != CONTROL)
    return frozenset(l for l in ys if l.atom in lang)


def preferred_from_compiled(cp: CompiledProgram, max_undecided: Optional[int] = DEFAULT_MAX_UNDECIDED) -> list[AnswerSet]:
    found = {project(y, cp.language) for y in answer_sets(cp.program, max_undecided)}
    return sorted(found, key=answer_set_key)


def preferred_answer_sets(p: OrderedProgram, max_undecided: Optional[int] = DEFAULT_MAX_UNDECIDED) -> list[AnswerSet]:
    return preferred_from_compiled(compile_program(p), max_undecided)
