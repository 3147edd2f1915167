from __future__ import annotations

import json
import re
import random

import pytest
from hypothesis import given, settings

from mueq.annotated import AnnType, ann_canonical, ann_free_vars, ann_named, cann, parse_ann, sc
from mueq.binding import substitute
from mueq.decider import (
    Answer,
    Goal,
    Mode,
    Rule,
    applicable_rules,
    check_proof,
    decide,
    decide_classes,
    decide_named,
    export_proof,
    proof_from_json,
    rule_counts,
)
from mueq.generate import random_pair, rename_bound
from mueq.oracle import OracleAnswer, verdict
from mueq.reduction import standard_reducts
from mueq.syntax import parse
from strategies import small_types

P = parse
WORKED = (P("mu a . mu b . mu g . ((mu d . a) -> g)"), P("mu a . mu b . (a -> (mu g . a -> g))"))


def shape(p):
    return (p.rule, tuple(shape(c) for c in p.children))


def named_goal(lhs, rhs):
    return Goal(parse_ann(lhs), parse_ann(rhs), Mode.NAMED)


def test_axiom_only():
    assert applicable_rules(Goal(cann(P("a")), cann(P("a")))) == [(Rule.AXIOM, [])]
    assert applicable_rules(named_goal("mu a . a", "mu b . b")) == [(Rule.AXIOM, [])]


def test_left_mu_step_premise():
    g = named_goal("(mu x) mu b . x -> b", "(mu x) x")
    rules = dict((r, ps) for r, ps in applicable_rules(g))
    (premise,) = rules[Rule.LEFT_MU_STEP]
    body = P("mu b . x -> b")
    assert premise.lhs == AnnType(("x",), substitute(body.body, "b", body))
    assert premise.rhs == g.rhs
    assert Rule.RIGHT_MU_STEP not in rules


def test_decomposition_in_worked_example():
    g = named_goal("(mu a) (mu d . a) -> mu g . (mu d . a) -> g", "(mu a) a -> mu g . a -> g")
    rules = dict(applicable_rules(g))
    left, right = rules[Rule.DECOMPOSITION]
    assert str(left) == "(mu a) mu d . a = (mu a) a"
    assert str(right) == "(mu a) mu g . (mu d . a) -> g = (mu a) mu g . a -> g"


def test_decomposition_requires_matching_prefix_positions():
    # the left components keep different frozen positions
    g = named_goal("(mu a b) a -> b", "(mu a b) b -> a")
    assert Rule.DECOMPOSITION not in dict(applicable_rules(g))
    assert Rule.DECOMPOSITION not in dict(applicable_rules(Goal(cann(g.lhs), cann(g.rhs))))
    assert dict(applicable_rules(named_goal("(mu a b) a -> b", "(mu c d) c -> d")))[Rule.AXIOM] == []


def test_freezing_requires_used_binder():
    g = named_goal("mu a . b", "mu a . b -> a")
    assert Rule.MU_FREEZING not in dict(applicable_rules(g))


@pytest.mark.parametrize("mode", list(Mode))
def test_worked_example(mode):
    v = decide(*WORKED, mode)
    assert v.answer is Answer.EQUAL
    assert check_proof(v.proof)
    assert v.proof.size() == 12
    assert rule_counts(v.proof) == {
        Rule.AXIOM: 3, Rule.LEFT_MU_STEP: 4, Rule.RIGHT_MU_STEP: 1,
        Rule.MU_FREEZING: 2, Rule.DECOMPOSITION: 2,
    }
    assert v.proof.rule is Rule.MU_FREEZING


@pytest.mark.parametrize("lhs, rhs, expected", [
    ("a", "a", Answer.EQUAL),
    ("a", "b", Answer.NOT_EQUAL),
    ("mu b . a", "a", Answer.EQUAL),
    ("mu a . a", "mu b . b", Answer.EQUAL),
    ("mu a . a -> a", "(mu a . a -> a) -> mu b . b -> b", Answer.EQUAL),
    ("mu a . a -> a", "mu a . (a -> a) -> a", Answer.NOT_EQUAL),
    ("mu a . a", "a", Answer.NOT_EQUAL),
    ("mu a . a -> b", "b", Answer.NOT_EQUAL),
])
def test_decide_examples(lhs, rhs, expected):
    assert decide_classes(P(lhs), P(rhs)).answer is expected
    assert decide_named(P(lhs), P(rhs)).answer is expected


def test_one_left_step():
    p = decide_classes(P("mu b . a"), P("a")).proof
    assert p.rules() == [Rule.LEFT_MU_STEP, Rule.AXIOM]


def test_export_json():
    leaf = decide_classes(P("a"), P("a")).proof
    assert json.loads(export_proof(leaf, "json")) == {"rule": "axiom", "lhs": "a", "rhs": "a", "children": []}
    for mode in Mode:
        p = decide(*WORKED, mode).proof
        back = proof_from_json(export_proof(p, "json"), mode)
        assert shape(back) == shape(p)
        assert [n.goal.key() for n in back.nodes()] == [n.goal.key() for n in p.nodes()]
        assert check_proof(back)


def test_export_dot():
    dot = export_proof(decide_named(*WORKED).proof, "dot").decode()
    assert dot.startswith("digraph")
    assert sum(1 for line in dot.splitlines() if re.match(r"\s*g\d+ \[label=", line)) == 10
    assert 'label="decomposition"' in dot
    with pytest.raises(ValueError):
        export_proof(decide_named(*WORKED).proof, "svg")


def test_check_proof_rejects_tampering():
    p = decide_named(*WORKED).proof
    bad = type(p)(Rule.DECOMPOSITION, p.goal, p.children)
    assert not check_proof(bad)


@settings(max_examples=80)
@given(small_types(9), small_types(9))
def test_symmetry_and_mode_agreement(A, B):
    vc, vn = decide_classes(A, B), decide_named(A, B)
    assert vc.answer is vn.answer is decide_classes(B, A).answer
    if vc.equal:
        assert vc.proof.size() == vn.proof.size()
        assert check_proof(vc.proof) and check_proof(vn.proof)
    assert vc.stats.distinct_goals <= len(sc(A)) * len(sc(B))


@given(small_types(10))
def test_reflexive(A):
    assert decide_classes(A, A).equal
    assert decide_named(A, rename_bound(random.Random(0), A)).equal


@settings(max_examples=60)
@given(small_types(9), small_types(9))
def test_goals_stay_inside_closures(A, B):
    v = decide_classes(A, B)
    if not v.equal:
        return
    left, right = sc(A), sc(B)
    for node in v.proof.nodes():
        assert node.goal.lhs in left and node.goal.rhs in right
        assert node.goal.lhs.arity == node.goal.rhs.arity
        lhs, rhs = ann_named(node.goal.lhs), ann_named(node.goal.rhs)
        assert ann_free_vars(lhs) == ann_free_vars(rhs)


def test_renaming_invariance():
    rng = random.Random(7)
    for _ in range(200):
        A, B = random_pair(rng, 9)
        A2, B2 = rename_bound(rng, A), rename_bound(rng, B)
        assert decide_named(A, B).answer is decide_named(A2, B2).answer


def test_equal_iff_common_standard_reduct():
    rng = random.Random(11)
    checked = 0
    for _ in range(150):
        A, B = random_pair(rng, 6)
        ov = verdict(A, B, 2, 6)
        v = decide_classes(A, B)
        if ov.answer is OracleAnswer.EQUAL:
            assert v.equal
            assert any(standard_reducts(A, k) & standard_reducts(B, k) for k in range(7))
            checked += 1
        elif ov.answer is OracleAnswer.DISTINCT:
            assert not v.equal
            assert not standard_reducts(A, 3) & standard_reducts(B, 3)
    assert checked > 20


def test_goal_key_is_alpha_invariant():
    g1 = named_goal("(mu x) mu y . x -> y", "(mu x) x")
    g2 = named_goal("(mu p) mu q . p -> q", "(mu r) r")
    assert g1.key() == g2.key() == (ann_canonical(g1.lhs), ann_canonical(g1.rhs))
