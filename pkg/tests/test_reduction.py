from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mueq.binding import alpha_eq, canonicalize, cfree_names
from mueq.reduction import (
    ArrowNode,
    AtomLeaf,
    CutLeaf,
    LoopLeaf,
    NotAMuRedex,
    contract_mu,
    one_step_reducts,
    reduct_distances,
    reducts_to_depth,
    standard_reducts,
    truncated_tree,
)
from mueq.syntax import Arrow, Mu, barendregt, free_vars, is_barendregt, parse, replace_at, subterm
from strategies import small_types

P = parse
C = canonicalize


def brute_reducts(t, k):
    """Closure by named one-step reduction, independent of the class-level stepper."""
    frontier, seen = [t], {C(t)}
    for _ in range(k):
        nxt = []
        for u in frontier:
            for step in one_step_reducts(u):
                c = C(step.target)
                if c not in seen:
                    seen.add(c)
                    nxt.append(step.target)
        frontier = nxt
    return frozenset(seen)


def test_contract_examples():
    assert alpha_eq(contract_mu(P("mu a . mu b . a")), P("mu b1 . (mu a . mu b . a)"))
    B = P("mu a . a -> a")
    assert contract_mu(B) == Arrow(B, B)
    assert contract_mu(P("mu a . b")) == P("b")
    with pytest.raises(NotAMuRedex):
        contract_mu(P("a -> a"))


def test_one_step_examples():
    assert one_step_reducts(P("a")) == []
    steps = one_step_reducts(P("(mu a . a) -> (mu a . a)"))
    assert [s.redex_path for s in steps] == [(0,), (1,)]
    assert [s.redex_path for s in one_step_reducts(P("mu a . mu b . a"))] == [(), (0,)]


def test_reducts_to_depth_examples():
    B = P("mu a . a -> a")
    assert reducts_to_depth(P("a"), 5) == {C(P("a"))}
    assert reducts_to_depth(B, 1) == {C(B), C(Arrow(B, B))}
    A = P("mu a . mu b . a")
    assert reducts_to_depth(A, 2) == brute_reducts(A, 2)
    assert reducts_to_depth(A, 0) == {C(A)}


def test_standard_reducts_base_case():
    t = P("mu a . (mu b . b -> a) -> a")
    assert standard_reducts(t, 0) == {C(t)}


def test_non_standard_order_excluded():
    Cm = P("mu a . mu b . mu g . a")
    # contract the inner mu b first, then the outer mu a
    inner_first = P("mu g1 . (mu a . mu g . a)")
    assert C(inner_first) in reducts_to_depth(Cm, 2)
    assert C(inner_first) not in standard_reducts(Cm, 2)


def test_two_step_reduction_standardized():
    # C[x, y] = x -> y, A = mu a . mu b . C[a, b], B = mu a . C[a, mu b . C[a, b]]
    A = P("mu a . mu b . a -> b")
    B = P("mu a . a -> mu b . a -> b")
    head_then_head = Arrow(A, Mu("b", Arrow(A, P("b"))))
    target = Arrow(B, Mu("b", Arrow(B, P("b"))))
    assert C(head_then_head) in standard_reducts(A, 2)
    assert C(target) in reducts_to_depth(A, 2)
    assert C(target) not in standard_reducts(A, 2)
    assert C(target) in standard_reducts(A, 4)


def test_trees():
    assert truncated_tree(P("b"), 0) == AtomLeaf("b")
    assert truncated_tree(P("b"), 4) == AtomLeaf("b")
    assert truncated_tree(P("mu a . a"), 3) == LoopLeaf()
    cut = ArrowNode(CutLeaf(), CutLeaf())
    assert truncated_tree(P("mu a . a -> a"), 2) == ArrowNode(cut, cut)
    assert truncated_tree(P("mu a . mu b . b -> a"), 1) == ArrowNode(CutLeaf(), CutLeaf())
    assert truncated_tree(P("a -> mu b . b"), 3) == ArrowNode(AtomLeaf("a"), LoopLeaf())


@given(small_types(9))
def test_steps_are_well_formed(t):
    for step in one_step_reducts(t):
        redex = subterm(t, step.redex_path)
        assert isinstance(redex, Mu)
        assert alpha_eq(step.target, replace_at(t, step.redex_path, contract_mu(redex)))
        assert is_barendregt(step.target)
    mus = [p for p, s in _subterms(t) if isinstance(s, Mu)]
    assert len(one_step_reducts(t)) == len(mus)


def _subterms(t, path=()):
    yield path, t
    match t:
        case Arrow(left, right):
            yield from _subterms(left, path + (0,))
            yield from _subterms(right, path + (1,))
        case Mu(_, body):
            yield from _subterms(body, path + (0,))


@given(small_types(8), st.integers(0, 3))
def test_closure_matches_named_enumeration(t, k):
    assert reducts_to_depth(t, k) == brute_reducts(barendregt(t), k)


@given(small_types(8), st.integers(0, 4))
def test_free_vars_preserved(t, k):
    fv = free_vars(t)
    for u in brute_reducts(t, min(k, 3)):
        assert cfree_names(u) == fv


@settings(max_examples=60)
@given(small_types(7), st.integers(0, 4))
def test_standard_within_all_reducts(t, k):
    assert standard_reducts(t, k) <= reducts_to_depth(t, k)


@settings(max_examples=40)
@given(small_types(6), st.integers(1, 2))
def test_standardization_with_extra_steps(t, k):
    assert reducts_to_depth(t, k) <= standard_reducts(t, k + 4)


@pytest.mark.parametrize("text, bound", [
    ("mu z . z -> mu x . z", 7),
    ("mu x . mu y . x -> x", 7),
    ("mu y . mu x . y -> x", 9),
])
def test_standardization_three_steps(text, bound):
    t = P(text)
    assert reducts_to_depth(t, 3) <= standard_reducts(t, bound)


@settings(max_examples=60)
@given(small_types(8))
def test_local_confluence(t):
    targets = [C(s.target) for s in one_step_reducts(t)]
    for u, v in itertools.combinations(targets, 2):
        assert reduct_distances(u, 4).keys() & reduct_distances(v, 4).keys()


@given(small_types(9), st.integers(0, 3))
def test_tree_invariant_under_steps(t, d):
    tree = truncated_tree(t, d)
    for step in one_step_reducts(t):
        assert truncated_tree(step.target, d) == tree
