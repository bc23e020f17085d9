import pickle

import pytest
from hypothesis import given
from hypothesis import strategies as st

from olp.core import (
    LIT,
    Atom,
    DuplicateName,
    Literal,
    OrderedProgram,
    Rule,
    Term,
    answer_set_key,
    applied,
    atom,
    complement,
    desugar_constraints,
    format_answer_set,
    is_consistent,
    neg,
    prec,
    term,
)

from conftest import literals, lits, prog


def test_variables_are_capitalised():
    assert Term("X").is_variable
    assert not Term("x").is_variable
    assert not term("n1", "X").is_ground


def test_control_atoms_are_a_separate_kind():
    assert applied("n1") != atom("applied", "n1")
    assert str(applied("n1")) == "_ap(n1)"
    with pytest.raises(ValueError):
        Atom("control", "applied", (Term("a"), Term("b")))


@given(literals())
def test_complement_is_an_involution(l):
    assert complement(complement(l)) == l
    assert complement(l) != l
    assert -l == complement(l)


@given(st.sets(literals()), st.sets(literals()))
def test_consistency_is_antimonotone(xs, ys):
    if is_consistent(xs | ys):
        assert is_consistent(xs) and is_consistent(ys)


def test_lit_contains_everything_and_survives_pickling():
    assert neg(atom("zz")) in LIT
    assert pickle.loads(pickle.dumps(LIT)) is LIT
    assert format_answer_set(LIT) == "Lit"


def test_answer_sets_print_sorted():
    assert format_answer_set(lits("prec(n3,n2), b, -a")) == "{-a, b, prec(n3,n2)}"
    assert format_answer_set(frozenset()) == "{}"
    assert sorted([LIT, frozenset()], key=answer_set_key)[-1] is LIT


def test_duplicate_names_are_rejected():
    r = Rule(Literal(atom("a")), name=Term("n1"))
    with pytest.raises(DuplicateName):
        OrderedProgram([r, Rule(Literal(atom("b")), name=Term("n1"))])


def test_static_means_preference_facts_only(p1):
    assert not p1.is_static
    assert prog("n1: a. n2: b. n1 < n2.").is_static
    assert not prog("n1: a :- prec(n1,n2). n2: b.", unknown_names="ignore").is_static
    assert prog("n1: a. n2: b.").is_static
    assert not prog("n1: a. n2: b.").has_preferences


def test_constraints_share_one_fresh_atom():
    p = desugar_constraints(prog(":- a, b. :- c."))
    assert [str(r) for r in p] == ["_false :- a, b, not _false.", "_false :- c, not _false."]


def test_rule_text():
    r = Rule(Literal(atom("b")), (neg(atom("a")),), (Literal(atom("c")),), Term("n2"))
    assert str(r) == "n2: b :- -a, not c."
    assert str(Rule(Literal(prec("n3", "n2")))) == "prec(n3,n2)."
