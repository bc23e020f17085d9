"""Seeded random ordered programs and the exhaustive small-space sweep."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .core import Literal, OrderedProgram, Rule, Term, atom, prec

ATOM_NAMES = "abcd"


@dataclass(frozen=True)
class CorpusConfig:
    max_rules: int = 5
    max_atoms: int = 4
    max_body: int = 2
    p_strong: float = 0.25
    p_naf: float = 0.5
    p_edge: float = 0.3
    # dynamic programs only
    max_pref_rules: int = 2
    p_named_pref_rule: float = 0.5


def transitive_closure(pairs: Iterable[tuple]) -> set[tuple]:
    closure = set(pairs)
    while True:
        extra = {(a, d) for a, b in closure for c, d in closure if b == c} - closure
        if not extra:
            return closure
        closure |= extra


def transitive_reduction(pairs: Iterable[tuple]) -> set[tuple]:
    """Reduction of an acyclic relation."""
    closure = transitive_closure(pairs)
    nodes = {x for p in closure for x in p}
    return {
        (a, c) for a, c in closure
        if not any((a, b) in closure and (b, c) in closure for b in nodes if b not in (a, c))
    }


def _literal(rng: random.Random, atoms: list[str], cfg: CorpusConfig) -> Literal:
    return Literal(atom(rng.choice(atoms)), rng.random() < cfg.p_strong)


def _body(rng: random.Random, atoms: list[str], cfg: CorpusConfig) -> tuple[tuple, tuple]:
    pbody, nbody = [], []
    for _ in range(rng.randint(0, cfg.max_body)):
        (nbody if rng.random() < cfg.p_naf else pbody).append(_literal(rng, atoms, cfg))
    return tuple(pbody), tuple(nbody)


def random_dag(rng: random.Random, names: list[Term], p_edge: float) -> set[tuple[Term, Term]]:
    """Random strict order as a transitive reduction; (s, t) means t is preferred."""
    perm = list(names)
    rng.shuffle(perm)
    edges = {
        (perm[i], perm[j])
        for i in range(len(perm)) for j in range(i + 1, len(perm))
        if rng.random() < p_edge
    }
    return transitive_reduction(edges)


def random_program(rng: random.Random, kind: str = "static", cfg: CorpusConfig = CorpusConfig()) -> OrderedProgram:
    """``kind`` is ``plain`` (no preferences), ``static`` or ``dynamic``."""
    atoms = list(ATOM_NAMES[: rng.randint(1, cfg.max_atoms)])
    n_pref = rng.randint(1, cfg.max_pref_rules) if kind == "dynamic" else 0
    n_rules = rng.randint(1, max(1, cfg.max_rules - n_pref))
    rules = []
    for i in range(n_rules):
        pbody, nbody = _body(rng, atoms, cfg)
        rules.append(Rule(_literal(rng, atoms, cfg), pbody, nbody, Term(f"n{i + 1}")))
    names = [r.name for r in rules]
    if kind in ("static", "dynamic"):
        for s, t in sorted(random_dag(rng, names, cfg.p_edge), key=str):
            rules.append(Rule(Literal(prec(s, t))))
    if kind == "dynamic":
        k = len(names)
        for j in range(n_pref):
            s, t = rng.sample(names, 2) if len(names) > 1 else (names[0], names[0])
            pbody, nbody = _body(rng, atoms, cfg)
            if not pbody and not nbody:
                nbody = (_literal(rng, atoms, cfg),)
            name = Term(f"n{k + j + 1}") if rng.random() < cfg.p_named_pref_rule else None
            rules.append(Rule(Literal(prec(s, t)), pbody, nbody, name))
    return OrderedProgram(rules)


def corpus(seed: int, count: int, kind: str = "static", cfg: CorpusConfig = CorpusConfig()) -> Iterator[tuple[str, OrderedProgram]]:
    """``count`` programs; program ``i`` is reproducible from the label ``"{seed}:{kind}:{i}"``."""
    for i in range(count):
        label = f"{seed}:{kind}:{i}"
        yield label, random_program(random.Random(label), kind, cfg)


def program_from_label(label: str, cfg: CorpusConfig = CorpusConfig()) -> OrderedProgram:
    kind = label.split(":")[1]
    return random_program(random.Random(label), kind, cfg)


# --- exhaustive sweep -----------------------------------------------------

# a rule shape is (head, body) with head = (atom, negated) and
# body = () or ((atom, negated, weak),)
_SWEEP_ATOMS = 2


def _shapes() -> list[tuple]:
    lits = [(a, s) for a in range(_SWEEP_ATOMS) for s in (False, True)]
    bodies = [()] + [((a, s, w),) for a, s in lits for w in (False, True)]
    return [(h, b) for h in lits for b in bodies]


def _rename(shape: tuple, perm: tuple[int, ...], flips: tuple[bool, ...]) -> tuple:
    (ha, hs), body = shape
    return (
        (perm[ha], hs ^ flips[perm[ha]]),
        tuple((perm[a], s ^ flips[perm[a]], w) for a, s, w in body),
    )


def _renamings():
    for perm in itertools.permutations(range(_SWEEP_ATOMS)):
        for flips in itertools.product((False, True), repeat=_SWEEP_ATOMS):
            yield perm, flips


def strict_partial_orders(k: int) -> list[frozenset]:
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    out = []
    for bits in range(1 << len(pairs)):
        rel = {pairs[i] for i in range(len(pairs)) if bits >> i & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if transitive_closure(rel) != rel:
            continue
        out.append(frozenset(rel))
    return out


def _to_rule(shape: tuple, name: Term) -> Rule:
    (ha, hs), body = shape
    head = Literal(atom(ATOM_NAMES[ha]), hs)
    pbody = tuple(Literal(atom(ATOM_NAMES[a]), s) for a, s, w in body if not w)
    nbody = tuple(Literal(atom(ATOM_NAMES[a]), s) for a, s, w in body if w)
    return Rule(head, pbody, nbody, name)


def canonical_rule_sets(max_rules: int = 3) -> list[tuple]:
    """Sets of distinct rule shapes, one representative per literal renaming."""
    shapes = _shapes()
    group = list(_renamings())
    out = []
    for k in range(max_rules + 1):
        for combo in itertools.combinations(shapes, k):
            key = tuple(sorted(combo))
            canon = min(tuple(sorted(_rename(s, *g) for s in combo)) for g in group)
            if key == canon:
                out.append(key)
    return out


def exhaustive_sweep(max_rules: int = 3) -> Iterator[tuple[str, OrderedProgram]]:
    """Every statically ordered program with <= 3 rules over 2 atoms and bodies of <= 1 literal,
    modulo literal renaming, paired with every strict order on its rules."""
    orders = {k: strict_partial_orders(k) for k in range(max_rules + 1)}
    for rs_index, shapes in enumerate(canonical_rule_sets(max_rules)):
        names = [Term(f"n{i + 1}") for i in range(len(shapes))]
        rules = [_to_rule(s, n) for s, n in zip(shapes, names)]
        for o_index, order in enumerate(orders[len(shapes)]):
            facts = [
                Rule(Literal(prec(names[i], names[j])))
                for i, j in sorted(transitive_reduction(order))
            ]
            yield f"sweep:{rs_index}:{o_index}", OrderedProgram(rules + facts)
