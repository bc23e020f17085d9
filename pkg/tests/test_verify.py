import itertools
import random

import pytest
from hypothesis import given, settings

from olp import compiler
from olp.core import LIT, Literal, Rule, Term, defeated, okwrt
from olp.corpus import corpus
from olp.solver import answer_sets, generating_rules, is_grounded
from olp.verify import (
    ALL_CHECKS,
    FAIL,
    PASS,
    PreferenceOrder,
    VerificationReport,
    check_corollary5,
    check_principle_I,
    check_principle_II,
    check_static_equivalence,
    check_theorem1,
    check_theorem2,
    check_theorem2_trace,
    check_theorem3,
    check_theorem6,
    extract_order,
    is_order_preserving,
    is_strict_partial_order,
    probe,
    replay,
    run_checks,
    static_order,
)

from conftest import load, lits, programs, prog

T = Term
CHOICE = "n1: b :- not c. n2: c :- not b. n1 < n2."


def order(*pairs):
    return PreferenceOrder(frozenset((T(s), T(t)) for s, t in pairs))


def test_extract_order():
    assert extract_order(lits("prec(n3,n2), -prec(n2,n3), b")) == order(("n3", "n2"))
    assert extract_order(frozenset()) == order()
    assert extract_order(lits("prec(n1,n2), prec(n2,n3)")) == order(("n1", "n2"), ("n2", "n3"))


def test_strict_partial_orders():
    assert is_strict_partial_order(order(("3", "2")))
    assert not is_strict_partial_order(order(("1", "2"), ("2", "1")))
    assert not is_strict_partial_order(order(("1", "2"), ("2", "3")))
    assert not is_strict_partial_order(order(("1", "1")))


def test_order_preservation_on_the_choice_program():
    p = prog(CHOICE)
    base, o = p.without_preference_facts(), static_order(p)
    assert is_order_preserving(base, o, lits("c"))
    assert not is_order_preserving(base, o, lits("b"))
    assert is_order_preserving(base, o, LIT)
    assert is_order_preserving(base, order(), lits("b"))


def preserving_by_permutations(p, less, xs):
    gr = generating_rules(p, xs)
    rest = [r for r in p if r not in gr]
    for seq in itertools.permutations(gr):
        if not is_grounded(seq):
            continue
        ok = True
        for i, ri in enumerate(seq):
            for j, rj in enumerate(seq):
                if (ri.name, rj.name) in less and not j < i:
                    ok = False
            heads = {r.head for r in seq[:i]}
            for r2 in rest:
                if (ri.name, r2.name) in less and all(l in xs for l in r2.pbody) and not defeated(r2, heads):
                    ok = False
        if ok:
            return True
    return False


@settings(max_examples=120, deadline=None)
@given(programs(max_rules=4, static_order=True))
def test_order_preservation_matches_a_permutation_oracle(p):
    base, o = p.without_preference_facts(), static_order(p)
    for xs in answer_sets(base):
        if xs is LIT:
            continue
        assert is_order_preserving(base, o, xs) == preserving_by_permutations(base, o.pairs, xs)


def test_static_equivalence():
    assert check_static_equivalence(load("p2.olp")).verdict == PASS
    assert check_static_equivalence(prog(CHOICE)).verdict == PASS
    assert check_static_equivalence(prog("n1: a :- not b. n2: b :- not a.")).verdict == PASS
    assert check_static_equivalence(load("p1.olp")).verdict == "skip"


def test_lit_corner_is_noted_not_failed():
    rep = check_static_equivalence(prog("n1: a. n2: -a."))
    assert rep.verdict == PASS and rep.notes


def test_principle_I():
    assert check_principle_I(prog(CHOICE)).verdict == PASS
    assert check_principle_I(prog("n1: a.")).verdict == PASS


def test_principle_II_on_p1(p1):
    r = prog("e :- f.").rules[0]
    assert check_principle_II(p1, r).verdict == PASS
    rep = check_principle_II(p1, prog("e :- -a.").rules[0])
    assert "vacuous" in rep.notes[0]


def test_principle_II_static_with_an_extended_order():
    p = prog(CHOICE)
    r = Rule(*lits("b"), tuple(lits("d")), (), T("n3"))
    ext = order(("n1", "n2"), ("n3", "n1"), ("n3", "n2"))
    assert check_principle_II(p, r, "static", ext).verdict == PASS
    with pytest.raises(ValueError):
        check_principle_II(p, r, "static", order(("n2", "n1")))


def test_theorem_checks_on_p1(p1):
    for check in (check_theorem1, check_theorem2, check_theorem2_trace, check_theorem3):
        assert check(p1).verdict == PASS
    assert check_theorem3(prog("n1: a. n2: b :- a.")).verdict == PASS
    assert check_theorem6(p1).verdict == "skip"
    assert check_corollary5(prog(CHOICE)).verdict == PASS


@settings(max_examples=60, deadline=None)
@given(programs(max_rules=4, static_order=True))
def test_all_checks_pass_on_generated_programs(p):
    for rep in run_checks(p, seed="h"):
        assert rep.verdict != FAIL, rep.to_json()


def test_probe_extends_the_order_consistently():
    for label, p in corpus(3, 40, "static"):
        r, ext = probe(p, random.Random(label))
        assert r.name not in p.names
        assert is_strict_partial_order(ext)
        old = set(p.names)
        assert {(s, t) for s, t in ext.pairs if s in old and t in old} == static_order(p).pairs


def test_reports_serialise_deterministically():
    a = [r.to_json() for r in run_checks(prog(CHOICE), ALL_CHECKS, seed="s")]
    b = [r.to_json() for r in run_checks(prog(CHOICE), ALL_CHECKS, seed="s")]
    assert a == b


def test_failures_replay(monkeypatch):
    # a strategy that ignores preferences makes every program unordered
    def blind(n, m):
        return [("c2", Rule(Literal(okwrt(n, m))))]

    original = compiler.compile_program
    monkeypatch.setattr("olp.verify.compile_program", lambda p: original(p, blind))
    rep = check_static_equivalence(prog(CHOICE))
    assert rep.verdict == FAIL
    assert "program" in rep.counterexample
    again = replay(rep)
    assert again.verdict == FAIL and again.counterexample == rep.counterexample
    monkeypatch.undo()
    assert replay(rep).verdict == PASS


def test_replay_needs_a_counterexample():
    with pytest.raises(ValueError):
        replay(VerificationReport("theorem1", PASS))
