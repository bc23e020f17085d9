from hypothesis import given, settings

from olp.compiler import compile_program, expected_size, preferred_answer_sets, project, translate_rule
from olp.core import LIT, Term, UnnamedRule, okwrt
from olp.emit import emit
from olp.parser import parse_program
from olp.solver import answer_sets, brute_force_answer_sets

from conftest import GOLDEN, load, lits, programs, prog

import pytest


def texts(rules):
    return {str(r) for r in rules}


def test_translation_of_r3_and_r2(p1):
    r2, r3 = p1.rules[1], p1.rules[2]
    t3 = texts(translate_rule(r3, p1))
    assert "_okw(n3,n2) :- prec(n3,n2), _ap(n2)." in t3
    assert "_bl(n3) :- _ok(n3), b." in t3
    t2 = texts(translate_rule(r2, p1))
    assert {"_bl(n2) :- _ok(n2), not -a.", "_bl(n2) :- _ok(n2), c."} <= t2


def test_c1_quantifies_over_every_name_including_itself(p1):
    (c1,) = [r for r in translate_rule(p1.rules[0], p1) if str(r.head) == "_ok(n1)"]
    assert [l.atom for l in c1.pbody] == [okwrt("n1", f"n{i}") for i in range(1, 5)]


def test_sizes(p1):
    assert [len(translate_rule(r, p1)) for r in p1] == [35, 37, 36, 36]
    cp = compile_program(p1)
    assert cp.raw_size == 144
    assert len(compile_program(prog(""))) == 0
    assert compile_program(prog("n1: a.")).raw_size == 8


def test_unnamed_rules_are_copied():
    cp = compile_program(prog("n1: a. b :- a."))
    assert "b :- a." in texts(cp.program)
    with pytest.raises(UnnamedRule):
        translate_rule(prog("b.").rules[0], [])


@settings(max_examples=60, deadline=None)
@given(programs(static_order=True))
def test_size_formula(p):
    k = len(p.names)
    assert compile_program(p).raw_size == sum(expected_size(r, k) for r in p if r.name is not None) \
        + sum(1 for r in p if r.name is None)


def test_projection():
    y = lits("-a, b, prec(n3,n2), _ok(n1), _ap(n1)")
    assert project(y) == lits("-a, b, prec(n3,n2)")
    assert project(frozenset()) == frozenset()
    assert project(LIT) is LIT


def test_p1_preferred(p1):
    (x,) = preferred_answer_sets(p1)
    assert lits("-a, b, prec(n3,n2)") <= x
    assert lits("c").isdisjoint(x)
    assert x == lits("-a, b, -prec(n2,n3), prec(n3,n2)")


def test_p1_golden_outputs(p1):
    from olp.emit import emit_answer_sets
    assert emit_answer_sets(answer_sets(p1)) == (GOLDEN / "p1_regular.txt").read_text()
    assert emit_answer_sets(preferred_answer_sets(p1)) == (GOLDEN / "p1_preferred.txt").read_text()
    assert emit(compile_program(p1).program) == (GOLDEN / "p1_compiled.olp").read_text()


def test_p2_matches_the_oracle():
    from olp.emit import emit_answer_sets
    p2 = load("p2.olp")
    cp = compile_program(p2)
    oracle = sorted({project(y, cp.language) for y in brute_force_answer_sets(cp.program)}, key=str)
    assert preferred_answer_sets(p2) == oracle
    assert emit_answer_sets(oracle) == (GOLDEN / "p2_preferred.txt").read_text()


@settings(max_examples=80, deadline=None)
@given(programs(max_rules=4))
def test_no_preferences_means_regular_semantics(p):
    regular = [x for x in answer_sets(p) if x is not LIT]
    assert preferred_answer_sets(p) == regular


def test_native_output_reads_back(p1):
    cp = compile_program(p1)
    again = parse_program(emit(cp.program), allow_control=True, unknown_names="ignore")
    assert again == cp.program


def test_asp_dialect_has_no_names():
    text = emit(compile_program(prog("n1: a :- not b.")).program, "asp")
    assert "n1:" not in text
    assert "_ap(n1) :- _ok(n1), not b." in text.splitlines()
    assert emit(prog(":- a."), "asp") == ":- a.\n"
