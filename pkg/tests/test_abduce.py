import pytest
from hypothesis import assume, given, settings

import oracle
from dlcontrast.abduce import abduce, candidate_space, foil_justification
from dlcontrast.errors import PreconditionError
from dlcontrast.generators import two_path_kb
from dlcontrast.parser import parse_axiom, parse_kb
from dlcontrast.reasoner import ELReasoner
from dlcontrast.syntax import Atomic, ConceptAssertion

from strategies import kb_and_rng

HIRED_BOB = ConceptAssertion(Atomic("Hired"), "bob")


def hyp_texts(hs):
    return [sorted(a.text for a in h.axioms) for h in hs]


def test_running_example_hypotheses(krun):
    hs = abduce(krun, HIRED_BOB, 1)
    assert hyp_texts(hs) == [
        ["ClassAssertion(AI math)"],
        ["ClassAssertion(AIExpert bob)"],
        ["ClassAssertion(Hired bob)"],
        ["PropertyAssertion(publishesIn bob ml)"],
        ["PropertyAssertion(worksIn bob ml)"],
    ]


def test_foil_justifications_split_by_membership(krun):
    by_text = {h.axioms: h for h in abduce(krun, HIRED_BOB, 1)}
    h1 = next(h for k, h in by_text.items() if parse_axiom("PropertyAssertion(publishesIn bob ml)") in k)
    jq = foil_justification(krun, h1)
    assert {a.text for a in jq.missing_part} == {"PropertyAssertion(publishesIn bob ml)"}
    assert {a.text for a in jq.true_part} == {
        "SubClassOf(And(AIExpert Qualified) Hired)",
        "SubClassOf(Some(publishesIn AI) AIExpert)",
        "ClassAssertion(Qualified bob)",
        "ClassAssertion(AI ml)",
    }


def test_bound_zero_and_preconditions(krun, krun_disjoint):
    assert abduce(krun, HIRED_BOB, 0) == []
    with pytest.raises(PreconditionError):
        abduce(krun, ConceptAssertion(Atomic("Hired"), "alice"), 1)
    bad = krun.union([parse_axiom("SubClassOf(Qualified Nothing)")])
    with pytest.raises(PreconditionError):
        abduce(bad, HIRED_BOB, 1)
    with pytest.raises(ValueError):
        abduce(krun, HIRED_BOB, -1)


def test_inconsistent_candidates_are_excluded(krun_disjoint):
    texts = [t for h in hyp_texts(abduce(krun_disjoint, HIRED_BOB, 1)) for t in h]
    assert "PropertyAssertion(publishesIn bob ml)" not in texts
    assert "ClassAssertion(AIExpert bob)" not in texts
    assert "ClassAssertion(Hired bob)" in texts


def test_two_assertion_hypothesis():
    kb = two_path_kb()
    target = ConceptAssertion(Atomic("C"), "y")
    hs = hyp_texts(abduce(kb, target, 2))
    assert ["ClassAssertion(A1 y)", "ClassAssertion(A2 y)"] in hs
    assert ["ClassAssertion(C y)"] in hs
    assert ["ClassAssertion(E y)"] in hs


def test_candidate_space_includes_target_names():
    kb = parse_kb("ClassAssertion(A x)\n")
    target = ConceptAssertion(Atomic("B"), "y")
    texts = {a.text for a in candidate_space(kb, target)}
    assert texts == {"ClassAssertion(A y)", "ClassAssertion(B x)", "ClassAssertion(B y)"}


@settings(max_examples=40, deadline=None)
@given(kb_and_rng(max_axioms=8))
def test_matches_brute_force(pair):
    kb, rng = pair
    r = ELReasoner(kb.axioms)
    assume(r.is_consistent())
    target = ConceptAssertion(Atomic(rng.choice(["C0", "C1", "C2", "C3"])), rng.choice(["a0", "a1", "a2"]))
    assume(not r.entails(target))
    mine = {h.axioms for h in abduce(kb, target, 2)}
    assert mine == oracle.hypotheses(kb.axioms, target, 2)


def test_small_candidate_space():
    kb = parse_kb("SubClassOf(A B)\nClassAssertion(C x)\n")
    hs = hyp_texts(abduce(kb, ConceptAssertion(Atomic("B"), "x"), 1))
    assert hs == [["ClassAssertion(A x)"], ["ClassAssertion(B x)"]]


def test_trivial_hypothesis_has_no_true_part(krun):
    h = next(h for h in abduce(krun, HIRED_BOB, 1) if h.axioms == {HIRED_BOB})
    jq = foil_justification(krun, h)
    assert jq.true_part == frozenset() and jq.missing_part == {HIRED_BOB}


@settings(max_examples=40, deadline=None)
@given(kb_and_rng(max_axioms=15))
def test_hypotheses_satisfy_the_definition(pair):
    kb, rng = pair
    r = ELReasoner(kb.axioms)
    assume(r.is_consistent())
    target = ConceptAssertion(Atomic(rng.choice(["C0", "C1", "C2", "C3"])), rng.choice(["a0", "a1", "a2"]))
    assume(not r.entails(target))
    for h in abduce(kb, target, 2):
        full = ELReasoner([*kb.axioms, *h.axioms])
        assert full.is_consistent() and full.entails(target)
        for a in h.axioms:
            assert not full.entails(target, among=set(kb.axioms) | (h.axioms - {a}))
        assert all(not a.is_tbox for a in h.axioms)
