"""Answer sets of extended logic programs.

``reduct``, ``closure`` and ``is_answer_set`` follow the definitions
literally and work on ``Literal`` objects.  ``answer_sets`` enumerates
candidates by guessing which weakly negated literals (the program's NAnt set)
belong to the answer set; every candidate that survives is re-checked
against the definition, so the search only has to be complete, not sound.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .core import (
    LIT,
    AnswerSet,
    BudgetExceeded,
    Literal,
    NotAnAnswerSet,
    OrderedProgram,
    Rule,
    answer_set_key,
    as_rules,
    complement,
    defeated,
    desugar_constraints,
    is_consistent,
)

DEFAULT_MAX_UNDECIDED = 24
DEFAULT_MAX_ENUMERATION = 9


@dataclass(frozen=True)
class BasicProgram:
    rules: tuple[Rule, ...]
    # sources[i] is the rule that rules[i] was reduced from
    sources: tuple[Rule, ...] = ()

    def __post_init__(self):
        if any(not r.is_basic for r in self.rules):
            raise ValueError("basic programs contain no weakly negated literals")

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


@dataclass(frozen=True)
class ClosureTrace:
    """First stage at which each literal enters ``T^i(empty)``."""

    stages: dict
    inconsistent_at: Optional[int] = None

    def index(self, l: Literal) -> Optional[int]:
        return self.stages.get(l)

    def in_stage(self, l: Literal, i: int) -> bool:
        if self.inconsistent_at is not None and i > self.inconsistent_at:
            return True
        s = self.stages.get(l)
        return s is not None and s <= i

    @property
    def domain(self):
        return LIT if self.inconsistent_at is not None else frozenset(self.stages)


def _prepared(p) -> tuple[Rule, ...]:
    rules = as_rules(desugar_constraints(p))
    for r in rules:
        if not r.is_ground:
            raise ValueError(f"rule is not ground: {r}")
        if any(l.atom.kind == "equality" for l in r.literals()):
            raise ValueError(f"unevaluated equality in {r}")
    return rules


def reduct(p, xs) -> BasicProgram:
    kept = [r for r in as_rules(p) if not defeated(r, xs)]
    return BasicProgram(tuple(r.reduced() for r in kept), tuple(kept))


def closure(b: Iterable[Rule]) -> AnswerSet:
    """``Th(b)``: least logically closed set closed under the basic program ``b``."""
    rules = list(b)
    if any(not r.is_basic for r in rules):
        raise ValueError("closure expects a basic program")
    missing = []
    watch: dict[Literal, list[int]] = {}
    queue = []
    for i, r in enumerate(rules):
        body = set(r.pbody)
        missing.append(len(body))
        for l in body:
            watch.setdefault(l, []).append(i)
        if not body:
            queue.append(r.head)
    derived: set[Literal] = set()
    while queue:
        l = queue.pop()
        if l in derived:
            continue
        if complement(l) in derived:
            return LIT
        derived.add(l)
        for i in watch.get(l, ()):
            missing[i] -= 1
            if missing[i] == 0:
                queue.append(rules[i].head)
    return frozenset(derived)


def closure_trace(b: Iterable[Rule]) -> ClosureTrace:
    rules = list(b)
    if any(not r.is_basic for r in rules):
        raise ValueError("closure_trace expects a basic program")
    stages: dict[Literal, int] = {}
    current: set[Literal] = set()
    i = 0
    while True:
        i += 1
        step = {r.head for r in rules if all(l in current for l in r.pbody)}
        new = step - current
        if not new:
            return ClosureTrace(stages)
        for l in new:
            stages[l] = i
        current |= new
        if not is_consistent(current):
            return ClosureTrace(stages, inconsistent_at=i)


def _normalize(xs) -> AnswerSet:
    return xs if xs is LIT else frozenset(xs)


def is_answer_set(p, xs) -> bool:
    xs = _normalize(xs)
    if xs is not LIT and not is_consistent(xs):
        return False
    return closure(reduct(_prepared(p), xs)) == xs


class _Indexed:
    """A ground program over integer literal ids."""

    def __init__(self, rules: tuple[Rule, ...]):
        index: dict[Literal, int] = {}
        lits: list[Literal] = []
        for r in rules:
            for l in r.literals():
                if l not in index:
                    index[l] = len(lits)
                    lits.append(l)
        self.lits = lits
        self.comp = [index.get(complement(l), -1) for l in lits]
        self.heads = [index[r.head] for r in rules]
        self.pos = [tuple({index[l] for l in r.pbody}) for r in rules]
        self.neg = [tuple({index[l] for l in r.nbody}) for r in rules]
        self.npos = [len(b) for b in self.pos]
        self.watch: list[list[int]] = [[] for _ in lits]
        for i, body in enumerate(self.pos):
            for l in body:
                self.watch[l].append(i)
        self.nant = sorted({l for body in self.neg for l in body})

    def closure(self, active, paraconsistent: bool = False) -> Optional[bytearray]:
        """Closure under the rules flagged in ``active``; None stands for Lit.

        With ``paraconsistent`` complementary pairs do not collapse to Lit.
        """
        missing = list(self.npos)
        derived = bytearray(len(self.lits))
        heads, watch, comp = self.heads, self.watch, self.comp
        queue = [heads[i] for i, a in enumerate(active) if a and not missing[i]]
        while queue:
            l = queue.pop()
            if derived[l]:
                continue
            c = comp[l]
            if c >= 0 and derived[c] and not paraconsistent:
                return None
            derived[l] = 1
            for i in watch[l]:
                missing[i] -= 1
                if not missing[i] and active[i]:
                    queue.append(heads[i])
        return derived

    def _propagate(self, inside: bytearray, outside: bytearray) -> bool:
        # Bounds for any consistent answer set X with inside <= X, outside & X = {}:
        # X is contained in the paraconsistent closure of the rules not defeated
        # by inside, and contains Th(rules whose naf part lies in outside).
        nant, neg = self.nant, self.neg
        while True:
            changed = False
            upper = self.closure([not any(inside[l] for l in b) for b in neg], paraconsistent=True)
            for v in nant:
                if upper[v]:
                    continue
                if inside[v]:
                    return False
                if not outside[v]:
                    outside[v] = 1
                    changed = True
            lower = self.closure([all(outside[l] for l in b) for b in neg])
            if lower is None:
                return False
            for v in nant:
                if not lower[v]:
                    continue
                if outside[v]:
                    return False
                if not inside[v]:
                    inside[v] = 1
                    changed = True
            if not changed:
                return True

    def consistent_answer_sets(self, max_undecided: Optional[int]) -> list[frozenset]:
        found: list[frozenset] = []
        n = len(self.lits)

        def search(inside: bytearray, outside: bytearray, root: bool = False):
            if not self._propagate(inside, outside):
                return
            undecided = [v for v in self.nant if not inside[v] and not outside[v]]
            if root and max_undecided is not None and len(undecided) > max_undecided:
                raise BudgetExceeded(
                    f"{len(undecided)} undecided weakly negated literals exceed the cap of {max_undecided}"
                )
            if not undecided:
                x = self.closure([not any(inside[l] for l in b) for b in self.neg])
                found.append(frozenset(self.lits[i] for i in range(n) if x[i]))
                return
            v = undecided[0]
            for flag in (inside, outside):
                i2, o2 = bytearray(inside), bytearray(outside)
                (i2 if flag is inside else o2)[v] = 1
                search(i2, o2)

        search(bytearray(n), bytearray(n), root=True)
        return found

    def lit_is_answer_set(self) -> bool:
        # relative to Lit every rule with a naf part is defeated
        return self.closure([not b for b in self.neg]) is None


def answer_sets(p, max_undecided: Optional[int] = DEFAULT_MAX_UNDECIDED) -> list[AnswerSet]:
    """All answer sets of the ground program ``p`` in sorted order.

    ``BudgetExceeded`` is raised when more than ``max_undecided`` weakly
    negated literals remain open after propagation at the root of the search
    (``None`` disables the cap).
    """
    rules = _prepared(p)
    ix = _Indexed(rules)
    result: set = set(ix.consistent_answer_sets(max_undecided))
    if ix.lit_is_answer_set():
        result.add(LIT)
    return sorted(result, key=answer_set_key)


def nant(p) -> set[Literal]:
    return {l for r in as_rules(p) for l in r.nbody}


def brute_force_answer_sets(p, max_nant: int = 16) -> list[AnswerSet]:
    """Plain NAnt guessing: every subset D of NAnt, X = Th(reduct by D), keep if X is an answer set."""
    rules = _prepared(p)
    guesses = sorted(nant(rules), key=lambda l: l.sort_key)
    if len(guesses) > max_nant:
        raise BudgetExceeded(f"|NAnt| = {len(guesses)} exceeds {max_nant}")
    result: set = set()
    for mask in range(1 << len(guesses)):
        d = {l for i, l in enumerate(guesses) if mask >> i & 1}
        x = closure(reduct(rules, d))
        if is_answer_set(rules, x):
            result.add(x)
    if is_answer_set(rules, LIT):
        result.add(LIT)
    return sorted(result, key=answer_set_key)


def generating_rules(p, xs) -> tuple[Rule, ...]:
    """Rules of ``p`` not defeated by ``xs`` whose prerequisites lie in ``xs``."""
    xs = _normalize(xs)
    if not is_answer_set(p, xs):
        raise NotAnAnswerSet(f"not an answer set of the program")
    return tuple(r for r in as_rules(p) if not defeated(r, xs) and all(l in xs for l in r.pbody))


def is_grounded(seq: Iterable[Rule]) -> bool:
    heads: set[Literal] = set()
    consistent = True
    for r in seq:
        if consistent and not all(l in heads for l in r.pbody):
            return False
        heads.add(r.head)
        if consistent and complement(r.head) in heads:
            consistent = False
    return True


def grounded_enumerations(rs: Iterable[Rule], max_rules: int = DEFAULT_MAX_ENUMERATION) -> Iterator[list[Rule]]:
    """Every ordering of ``rs`` that is grounded, in a deterministic order."""
    rules = sorted(set(rs), key=str)
    if len(rules) > max_rules:
        raise BudgetExceeded(f"{len(rules)} rules exceed the enumeration cap of {max_rules}")

    def extend(prefix: list[Rule], heads: dict[Literal, int], consistent: bool, rest: list[Rule]):
        if not rest:
            yield list(prefix)
            return
        for i, r in enumerate(rest):
            if consistent and not all(l in heads for l in r.pbody):
                continue
            prefix.append(r)
            heads[r.head] = heads.get(r.head, 0) + 1
            still = consistent and complement(r.head) not in heads
            yield from extend(prefix, heads, still, rest[:i] + rest[i + 1:])
            heads[r.head] -= 1
            if not heads[r.head]:
                del heads[r.head]
            prefix.pop()

    yield from extend([], {}, True, rules)


def can_precede(rs: Iterable[Rule], target: Rule, avoid: Iterable[Rule]) -> bool:
    """Is there a grounded enumeration of ``rs`` placing ``target`` before every rule of ``avoid``?

    Grounded prefixes only ever gain heads, so it suffices to fire greedily
    everything outside ``avoid``, then ``target``, then whatever is left.
    """
    rules = list(dict.fromkeys(rs))
    t = rules.index(target)
    avoid = set(avoid)
    placed: set[int] = set()
    heads: set[Literal] = set()
    consistent = True

    def place(i: int) -> None:
        nonlocal consistent
        placed.add(i)
        heads.add(rules[i].head)
        if complement(rules[i].head) in heads:
            consistent = False

    def fire(candidates: list[int]) -> None:
        progress = True
        while progress:
            progress = False
            for i in candidates:
                if i not in placed and (not consistent or all(l in heads for l in rules[i].pbody)):
                    place(i)
                    progress = True

    fire([i for i, r in enumerate(rules) if i != t and r not in avoid])
    if consistent and not all(l in heads for l in target.pbody):
        return False
    place(t)
    fire(list(range(len(rules))))
    return len(placed) == len(rules)
