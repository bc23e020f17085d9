import itertools
from pathlib import Path

import pytest
from hypothesis import strategies as st

from olp.core import LIT, Literal, OrderedProgram, Rule, Term, atom, prec
from olp.parser import parse_program

ROOT = Path(__file__).resolve().parent.parent
PROGRAMS = ROOT / "programs"
GOLDEN = Path(__file__).resolve().parent / "golden"


def prog(text, **kw):
    return parse_program(text, **kw)


def lits(text):
    """``"-a, b, prec(n3,n2)"`` -> frozenset of literals."""
    if not text.strip():
        return frozenset()
    facts = parse_program(_split_facts(text), allow_control=True, unknown_names="ignore")
    return frozenset(r.head for r in facts)


def _split_facts(text):
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    out.append(cur.strip())
    return " ".join(x + "." for x in out if x)


def load(name):
    return parse_program((PROGRAMS / name).read_text())


@pytest.fixture
def p1():
    return load("p1.olp")


# --- independent oracles -------------------------------------------------

def naive_closure(rules):
    """Fixpoint of the immediate-consequence operator over basic rules; Lit on clash."""
    xs = set()
    while True:
        new = {r.head for r in rules if r.head is not None and all(l in xs for l in r.pbody)}
        if new <= xs:
            break
        xs |= new
        if any(Literal(l.atom, not l.negated) in xs for l in xs):
            return LIT
    return frozenset(xs)


def definitional_answer_sets(p):
    """All answer sets by checking every subset of the program's literals, plus Lit."""
    rules = list(p)
    universe = sorted({l for r in rules for l in r.literals()}, key=lambda l: l.sort_key)
    out = []
    candidates = [frozenset(c) for k in range(len(universe) + 1) for c in itertools.combinations(universe, k)]
    for xs in candidates + [LIT]:
        reduct = [Rule(r.head, r.pbody) for r in rules if not any(l in xs for l in r.nbody)]
        if naive_closure(reduct) == xs or (xs is LIT and naive_closure(reduct) is LIT):
            out.append(xs)
    return out


# --- strategies ------------------------------------------------------------

ATOMS = "abc"


@st.composite
def literals(draw, atoms=ATOMS):
    return Literal(atom(draw(st.sampled_from(atoms))), draw(st.booleans()))


@st.composite
def programs(draw, max_rules=4, atoms=ATOMS, static_order=False, named=True):
    n = draw(st.integers(1, max_rules))
    rules = []
    for i in range(n):
        head = draw(literals(atoms))
        pbody = tuple(draw(st.lists(literals(atoms), max_size=2, unique=True)))
        nbody = tuple(draw(st.lists(literals(atoms), max_size=2, unique=True)))
        name = Term(f"n{i + 1}") if named else None
        rules.append(Rule(head, pbody, nbody, name))
    if static_order and n > 1:
        perm = draw(st.permutations(range(n)))
        for i, j in itertools.combinations(range(n), 2):
            if draw(st.booleans()):
                rules.append(Rule(Literal(prec(Term(f"n{perm[i] + 1}"), Term(f"n{perm[j] + 1}")))))
    return OrderedProgram(rules)
