"""Domain types for extended and ordered logic programs.

Terms, atoms, literals, rules and programs are immutable values.  Atoms come
in four kinds: regular atoms of the source language, preference atoms
``prec(s, t)`` (read: the rule named ``t`` has priority over the rule named
``s``), control atoms introduced by compilation (plus the ``in`` membership
atom of set-ordered programs), and equality atoms, which only exist before
grounding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

REGULAR = "regular"
PREFERENCE = "preference"
CONTROL = "control"
EQUALITY = "equality"

# control atom name -> (arity, printed functor)
CONTROL_ATOMS = {
    "applied": (1, "_ap"),
    "blocked": (1, "_bl"),
    "ok": (1, "_ok"),
    "okwrt": (2, "_okw"),
    "in": (2, "in"),
}
PRINTED_CONTROL = {printed: name for name, (_, printed) in CONTROL_ATOMS.items()}

# head of desugared integrity constraints
FALSE_ATOM_NAME = "_false"


class OlpError(Exception):
    pass


class DuplicateName(OlpError):
    pass


class UnknownName(OlpError):
    pass


class NameClash(OlpError):
    pass


class UnknownMember(UnknownName):
    pass


class UnnamedRule(OlpError):
    pass


class NotAnAnswerSet(OlpError):
    pass


class BudgetExceeded(OlpError):
    pass


class GroundingError(OlpError):
    pass


class NonFiniteUniverse(GroundingError):
    pass


class UnsafeRule(GroundingError):
    pass


def _cache_hash(obj, *fields) -> None:
    object.__setattr__(obj, "_hash", hash(fields))


@dataclass(frozen=True, eq=True)
class Term:
    """A constant, a variable (uppercase initial) or ``f(t1, ..., tn)``."""

    functor: str
    args: tuple[Term, ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        _cache_hash(self, self.functor, self.args)

    def __hash__(self):
        return self._hash

    @property
    def is_variable(self) -> bool:
        return self.functor[:1].isupper()

    @property
    def is_ground(self) -> bool:
        return not self.is_variable and all(a.is_ground for a in self.args)

    def variables(self) -> Iterator[Term]:
        if self.is_variable:
            yield self
        for a in self.args:
            yield from a.variables()

    def depth(self) -> int:
        return 1 + max((a.depth() for a in self.args), default=0) if self.args else 0

    def substitute(self, binding: dict[Term, Term]) -> Term:
        if self.is_variable:
            return binding.get(self, self)
        if not self.args:
            return self
        return Term(self.functor, tuple(a.substitute(binding) for a in self.args))

    def __str__(self):
        if not self.args:
            return self.functor
        return f"{self.functor}({','.join(map(str, self.args))})"

    def __repr__(self):
        return f"Term({str(self)!r})"


def term(text: str, *args: Union[str, Term]) -> Term:
    return Term(text, tuple(a if isinstance(a, Term) else Term(a) for a in args))


@dataclass(frozen=True, eq=True)
class Atom:
    kind: str
    name: str
    args: tuple[Term, ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if self.kind == PREFERENCE:
            if self.name != "prec" or len(self.args) != 2:
                raise ValueError("preference atoms carry exactly two name terms")
        elif self.kind == CONTROL:
            if self.name not in CONTROL_ATOMS or CONTROL_ATOMS[self.name][0] != len(self.args):
                raise ValueError(f"bad control atom {self.name}/{len(self.args)}")
        elif self.kind == EQUALITY:
            if len(self.args) != 2:
                raise ValueError("equality atoms are binary")
        elif self.kind != REGULAR:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        _cache_hash(self, self.kind, self.name, self.args)

    def __hash__(self):
        return self._hash

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.args)

    def substitute(self, binding: dict[Term, Term]) -> Atom:
        return Atom(self.kind, self.name, tuple(a.substitute(binding) for a in self.args))

    def __str__(self):
        if self.kind == EQUALITY:
            return f"{self.args[0]} = {self.args[1]}"
        functor = CONTROL_ATOMS[self.name][1] if self.kind == CONTROL else self.name
        if not self.args:
            return functor
        return f"{functor}({','.join(map(str, self.args))})"

    def __repr__(self):
        return f"Atom({str(self)!r})"


def _as_term(t: Union[str, Term]) -> Term:
    return t if isinstance(t, Term) else Term(t)


def atom(name: str, *args: Union[str, Term]) -> Atom:
    return Atom(REGULAR, name, tuple(map(_as_term, args)))


def prec(s: Union[str, Term], t: Union[str, Term]) -> Atom:
    return Atom(PREFERENCE, "prec", (_as_term(s), _as_term(t)))


def applied(n) -> Atom:
    return Atom(CONTROL, "applied", (_as_term(n),))


def blocked(n) -> Atom:
    return Atom(CONTROL, "blocked", (_as_term(n),))


def ok(n) -> Atom:
    return Atom(CONTROL, "ok", (_as_term(n),))


def okwrt(n, m) -> Atom:
    return Atom(CONTROL, "okwrt", (_as_term(n), _as_term(m)))


def member(n, m) -> Atom:
    """The ``in(n, m)`` atom: rule ``n`` belongs to the rule set ``m``."""
    return Atom(CONTROL, "in", (_as_term(n), _as_term(m)))


def equality(s, t) -> Atom:
    return Atom(EQUALITY, "=", (_as_term(s), _as_term(t)))


@dataclass(frozen=True, eq=True)
class Literal:
    atom: Atom
    negated: bool = False
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.negated and self.atom.kind == EQUALITY:
            raise ValueError("equality atoms cannot be strongly negated")
        _cache_hash(self, self.atom, self.negated)

    def __hash__(self):
        return self._hash

    def __neg__(self) -> Literal:
        return Literal(self.atom, not self.negated)

    @property
    def sort_key(self) -> tuple[str, bool]:
        return (str(self.atom), self.negated)

    def substitute(self, binding: dict[Term, Term]) -> Literal:
        return Literal(self.atom.substitute(binding), self.negated)

    def __str__(self):
        return ("-" if self.negated else "") + str(self.atom)

    def __repr__(self):
        return f"Literal({str(self)!r})"


def lit(a: Atom, negated: bool = False) -> Literal:
    return Literal(a, negated)


def neg(a: Atom) -> Literal:
    return Literal(a, True)


def complement(l: Literal) -> Literal:
    return Literal(l.atom, not l.negated)


class _Lit:
    """The inconsistent answer set: the set of all literals."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __contains__(self, item) -> bool:
        return True

    def __repr__(self):
        return "Lit"

    __str__ = __repr__

    def __reduce__(self):
        return "LIT"


LIT = _Lit()

AnswerSet = Union[frozenset, _Lit]


def is_consistent(xs: Iterable[Literal]) -> bool:
    if xs is LIT:
        return False
    xs = xs if isinstance(xs, (set, frozenset)) else set(xs)
    return not any(complement(l) in xs for l in xs if not l.negated)


def sort_literals(xs: Iterable[Literal]) -> list[Literal]:
    return sorted(xs, key=lambda l: l.sort_key)


def answer_set_key(xs: AnswerSet):
    # Lit sorts after every consistent set
    if xs is LIT:
        return (1, ())
    return (0, tuple(l.sort_key for l in sort_literals(xs)))


def format_answer_set(xs: AnswerSet) -> str:
    if xs is LIT:
        return "Lit"
    return "{" + ", ".join(map(str, sort_literals(xs))) + "}"


@dataclass(frozen=True, eq=True)
class Rule:
    head: Optional[Literal]
    pbody: tuple[Literal, ...] = ()
    nbody: tuple[Literal, ...] = ()
    name: Optional[Term] = None
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pbody", tuple(self.pbody))
        object.__setattr__(self, "nbody", tuple(self.nbody))
        if isinstance(self.name, str):
            object.__setattr__(self, "name", Term(self.name))
        _cache_hash(self, self.head, self.pbody, self.nbody, self.name)

    def __hash__(self):
        return self._hash

    @property
    def is_basic(self) -> bool:
        return not self.nbody

    @property
    def is_fact(self) -> bool:
        return not self.pbody and not self.nbody

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    def literals(self) -> Iterator[Literal]:
        if self.head is not None:
            yield self.head
        yield from self.pbody
        yield from self.nbody

    def terms(self) -> Iterator[Term]:
        if self.name is not None:
            yield self.name
        for l in self.literals():
            yield from l.atom.args

    def variables(self) -> list[Term]:
        seen: dict[Term, None] = {}
        for t in self.terms():
            for v in t.variables():
                seen.setdefault(v)
        return list(seen)

    @property
    def is_ground(self) -> bool:
        return all(t.is_ground for t in self.terms())

    def substitute(self, binding: dict[Term, Term]) -> Rule:
        return Rule(
            None if self.head is None else self.head.substitute(binding),
            tuple(l.substitute(binding) for l in self.pbody),
            tuple(l.substitute(binding) for l in self.nbody),
            None if self.name is None else self.name.substitute(binding),
        )

    def reduced(self) -> Rule:
        """``head <- pbody``: the rule with its weakly negated literals deleted."""
        return Rule(self.head, self.pbody, (), self.name)

    def __str__(self):
        body = [str(l) for l in self.pbody] + [f"not {l}" for l in self.nbody]
        prefix = f"{self.name}: " if self.name is not None else ""
        head = "" if self.head is None else str(self.head)
        if not body:
            return f"{prefix}{head}."
        sep = ":- " if self.head is None else " :- "
        return f"{prefix}{head}{sep}{', '.join(body)}."

    def __repr__(self):
        return f"Rule({str(self)!r})"


def rule(head: Optional[Literal], pbody=(), nbody=(), name=None) -> Rule:
    return Rule(head, tuple(pbody), tuple(nbody), name)


def defeated(r: Rule, xs) -> bool:
    return any(l in xs for l in r.nbody)


@dataclass(frozen=True)
class OrderedProgram:
    """A finite list of rules; names, where present, are pairwise distinct."""

    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        seen = set()
        for r in self.rules:
            if r.name is None:
                continue
            if r.name in seen:
                raise DuplicateName(f"rule name {r.name} used twice")
            seen.add(r.name)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __add__(self, other) -> OrderedProgram:
        return OrderedProgram(self.rules + tuple(other))

    @property
    def named(self) -> dict[Term, Rule]:
        return {r.name: r for r in self.rules if r.name is not None}

    @property
    def names(self) -> list[Term]:
        return [r.name for r in self.rules if r.name is not None]

    def literals(self) -> set[Literal]:
        return {l for r in self.rules for l in r.literals()}

    def atoms(self) -> set[Atom]:
        return {l.atom for l in self.literals()}

    @property
    def is_ground(self) -> bool:
        return all(r.is_ground for r in self.rules)

    @property
    def has_preferences(self) -> bool:
        return any(a.kind == PREFERENCE for a in self.atoms())

    @property
    def is_static(self) -> bool:
        """Preference atoms occur only as (positive) heads of facts."""
        for r in self.rules:
            if any(l.atom.kind == PREFERENCE for l in r.pbody + r.nbody):
                return False
            h = r.head
            if h is not None and h.atom.kind == PREFERENCE and (h.negated or not r.is_fact):
                return False
        return True

    def preference_facts(self) -> list[tuple[Term, Term]]:
        return [
            r.head.atom.args
            for r in self.rules
            if r.is_fact and r.head is not None and r.head.atom.kind == PREFERENCE and not r.head.negated
        ]

    def without_preference_facts(self) -> OrderedProgram:
        return OrderedProgram(
            r for r in self.rules
            if not (r.is_fact and r.head is not None and r.head.atom.kind == PREFERENCE)
        )


def as_rules(p) -> tuple[Rule, ...]:
    if isinstance(p, OrderedProgram):
        return p.rules
    return tuple(p)


def desugar_constraints(p) -> OrderedProgram:
    """Rewrite each ``:- B`` into ``_false :- B, not _false``."""
    f = Literal(atom(FALSE_ATOM_NAME))
    out = []
    for r in as_rules(p):
        if r.head is None:
            r = Rule(f, r.pbody, r.nbody + (f,), r.name)
        out.append(r)
    return OrderedProgram(out)
