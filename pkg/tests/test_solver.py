import itertools

import pytest
from hypothesis import given, settings

from olp.core import LIT, BudgetExceeded, NotAnAnswerSet, Rule, is_consistent
from olp.solver import (
    answer_sets,
    brute_force_answer_sets,
    can_precede,
    closure,
    closure_trace,
    generating_rules,
    grounded_enumerations,
    is_answer_set,
    is_grounded,
    reduct,
)

from conftest import definitional_answer_sets, lits, naive_closure, programs, prog

B = lits("-a, b, prec(n3,n2)")
C = lits("-a, c, prec(n3,n2)")


def test_p1_reduct(p1):
    assert [str(r) for r in reduct(p1, B)] == ["n1: -a.", "n2: b :- -a.", "n4: prec(n3,n2)."]
    assert all(r.is_basic for r in reduct(p1, frozenset()))
    assert len(reduct(prog("b :- -a, not c."), lits("c"))) == 0


def test_closure_stages():
    t = closure_trace(prog("a. b :- a."))
    assert (t.index(*lits("a")), t.index(*lits("b"))) == (1, 2)
    assert closure(prog("a. -a.")) is LIT
    assert closure(prog("")) == frozenset()


def test_p1_answer_sets(p1):
    assert answer_sets(p1) == [B, C]
    assert is_answer_set(p1, B)
    assert not is_answer_set(p1, lits("-a"))


def test_small_programs():
    assert answer_sets(prog("a.")) == [lits("a")]
    assert answer_sets(prog("p :- not p.")) == []
    assert answer_sets(prog("a. -a.")) == [LIT]


def test_generating_rules(p1):
    assert [str(r.name) for r in generating_rules(p1, B)] == ["n1", "n2", "n4"]
    assert [str(r.name) for r in generating_rules(p1, C)] == ["n1", "n3", "n4"]
    assert generating_rules(prog(""), frozenset()) == ()
    with pytest.raises(NotAnAnswerSet):
        generating_rules(p1, lits("-a"))


def test_grounded_sequences():
    r1, r2 = prog("-a. b :- -a.").rules
    assert is_grounded([r1, r2])
    assert not is_grounded([r2, r1])
    assert list(grounded_enumerations([r1, r2])) == [[r1, r2]]
    with pytest.raises(BudgetExceeded):
        list(grounded_enumerations(prog(" ".join(f"a{i}." for i in range(10))).rules))


@settings(max_examples=150, deadline=None)
@given(programs(max_rules=4, named=False))
def test_answer_sets_match_the_definition(p):
    expected = sorted(definitional_answer_sets(p), key=str)
    assert sorted(answer_sets(p), key=str) == expected
    assert sorted(brute_force_answer_sets(p), key=str) == expected


@settings(max_examples=150, deadline=None)
@given(programs(max_rules=5))
def test_answer_sets_are_fixpoints_and_minimal(p):
    found = answer_sets(p)
    for xs in found:
        assert closure(reduct(p, xs)) == xs
    consistent = [x for x in found if x is not LIT]
    for x, y in itertools.permutations(consistent, 2):
        assert not x < y


@given(programs(max_rules=5))
def test_trace_domain_is_the_closure(p):
    basic = [Rule(r.head, r.pbody) for r in p]
    t = closure_trace(basic)
    c = naive_closure(basic)
    assert closure(basic) == c
    if c is not LIT:
        assert set(t.domain) == c
        for l in c:
            i = t.index(l)
            assert t.in_stage(l, i) and not t.in_stage(l, i - 1)


@settings(max_examples=100, deadline=None)
@given(programs(max_rules=5))
def test_grounded_enumerations_replay_the_answer_set(p):
    for xs in answer_sets(p):
        if xs is LIT:
            continue
        gr = generating_rules(p, xs)
        for seq in itertools.islice(grounded_enumerations(gr), 20):
            assert frozenset(r.head for r in seq) == xs
        assert is_consistent(xs)


@settings(max_examples=100, deadline=None)
@given(programs(max_rules=5))
def test_can_precede_agrees_with_permutations(p):
    rules = list(dict.fromkeys(Rule(r.head, r.pbody) for r in p))
    if len(rules) > 6:
        return
    grounded = [s for s in itertools.permutations(rules) if is_grounded(s) and len(s) == len(rules)]
    for target in rules:
        for avoid in itertools.combinations([r for r in rules if r != target], 1):
            expected = any(
                s.index(target) < min(s.index(a) for a in avoid) for s in grounded
            )
            assert can_precede(rules, target, avoid) == expected
