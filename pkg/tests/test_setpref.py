import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from olp.compiler import preferred_answer_sets
from olp.core import (
    LIT,
    PREFERENCE,
    Literal,
    NameClash,
    OrderedProgram,
    Rule,
    Term,
    UnknownMember,
    applied,
    blocked,
    prec,
)
from olp.setpref import compile_sets, memberships, preferred_answer_sets_sets
from olp.solver import answer_sets

from conftest import load, lits, programs, prog


def regular_part(x):
    return frozenset(l for l in x if l.atom.kind != PREFERENCE)


def test_car_example_meets_p_and_s():
    (x,) = preferred_answer_sets_sets(load("car.olp"))
    assert lits("p, s, -e") <= x
    assert lits("e").isdisjoint(x)


def test_conjunctive_gating_deadlocks_on_the_car_example():
    (x,) = preferred_answer_sets_sets(load("car.olp"), gating="all")
    assert lits("p").isdisjoint(x) and lits("s").isdisjoint(x)


def test_hard_constraint_version_has_no_answer_set():
    p = load("car_constraint.olp")
    assert answer_sets(OrderedProgram(r for r in p if r.head is None or r.head.atom.name != "in")) == []
    assert preferred_answer_sets_sets(p) == []


def test_memberships():
    p = prog("n1: a. n2: b. set m = {n1, n2}. in(n1, k).")
    assert memberships(p) == {Term("m"): [Term("n1"), Term("n2")], Term("k"): [Term("n1")]}
    with pytest.raises(UnknownMember):
        compile_sets(prog("n1: a. in(n9, m).", unknown_names="ignore"))
    with pytest.raises(NameClash):
        compile_sets(prog("n1: a. n2: b. set m = {n1}.") + [Rule(Literal(prec("m", "n2")))])


def test_single_singleton_set_changes_nothing():
    p = prog("n1: a :- not b. n2: b :- not a.")
    assert preferred_answer_sets_sets(p + prog("set m = {n1}.")) == preferred_answer_sets(p)


def lift(r):
    if r.head is not None and r.head.atom.kind == PREFERENCE:
        s, t = r.head.atom.args
        return Rule(Literal(prec(f"s{s}", f"s{t}")))
    return r


@settings(max_examples=60, deadline=None)
@given(programs(max_rules=3, static_order=True))
def test_singleton_sets_reduce_to_rule_preferences(p):
    sets = prog(" ".join(f"set s{n} = {{{n}}}." for n in p.names))
    lifted = OrderedProgram(map(lift, p)) + sets
    rule_level = {regular_part(x) for x in preferred_answer_sets(p)}
    set_level = {regular_part(x) for x in preferred_answer_sets_sets(lifted)}
    assert rule_level == set_level


@settings(max_examples=40, deadline=None)
@given(programs(max_rules=3, static_order=True), st.data())
def test_set_applied_and_blocked(p, data):
    names = p.names
    members = data.draw(st.lists(st.sampled_from(names), min_size=1, unique=True))
    text = "set m = {" + ", ".join(map(str, members)) + "}."
    cp = compile_sets(p + prog(text))
    for y in answer_sets(cp.program):
        if y is LIT:
            continue
        assert (Literal(applied("m")) in y) == all(Literal(applied(n)) in y for n in members)
        assert (Literal(blocked("m")) in y) == any(Literal(blocked(n)) in y for n in members)
