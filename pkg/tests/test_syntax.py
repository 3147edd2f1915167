from __future__ import annotations

import pytest
from hypothesis import given

from mueq.binding import alpha_eq
from mueq.syntax import (
    Arrow,
    Atom,
    Mu,
    ParseError,
    barendregt,
    bound_vars,
    free_vars,
    fresh_name,
    is_barendregt,
    length,
    parse,
    positions,
    pretty,
    replace_at,
    subterm,
)
from strategies import mu_types

a, b, c = Atom("a"), Atom("b"), Atom("c")


@pytest.mark.parametrize("text, expected", [
    ("a", a),
    ("mu a . a -> a", Mu("a", Arrow(a, a))),
    ("a -> b -> c", Arrow(a, Arrow(b, c))),
    ("(a -> b) -> c", Arrow(Arrow(a, b), c)),
    ("  mu  x.x  ", Mu("x", Atom("x"))),
    ("a -> mu b . b -> a", Arrow(a, Mu("b", Arrow(b, a)))),
    ("((a))", a),
    ("x1' -> y_2", Arrow(Atom("x1'"), Atom("y_2"))),
])
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize("text", ["", "   ", "(a", "a)", "mu a .", "mu . a", "a ->", "mu mu . a", "mu", "a b", "1a", "a - b"])
def test_parse_errors(text):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.pos >= 0


@pytest.mark.parametrize("t, text", [
    (Mu("a", Arrow(a, a)), "mu a . a -> a"),
    (Arrow(Arrow(a, b), c), "(a -> b) -> c"),
    (b, "b"),
    (Arrow(Mu("a", a), b), "(mu a . a) -> b"),
    (Arrow(a, Mu("a", a)), "a -> mu a . a"),
])
def test_pretty(t, text):
    assert pretty(t) == text
    assert str(t) == text


def test_free_vars():
    assert free_vars(a) == {"a"}
    assert free_vars(Mu("a", Arrow(a, b))) == {"b"}
    assert free_vars(parse("(mu a . a) -> a")) == {"a"}
    assert bound_vars(parse("mu a . mu b . c")) == {"a", "b"}


@pytest.mark.parametrize("t, n", [(a, 1), (Arrow(a, a), 3), (Mu("a", Arrow(a, a)), 4)])
def test_length(t, n):
    assert length(t) == n


@pytest.mark.parametrize("avoid, expected", [(set(), "a"), ({"a"}, "a1"), ({"a", "a1"}, "a2"), ({"a1"}, "a")])
def test_fresh_name(avoid, expected):
    assert fresh_name("a", avoid) == expected


def test_fresh_name_strips_numeric_suffix():
    assert fresh_name("a1", {"a1"}) == "a2"


@pytest.mark.parametrize("t, expected", [
    (Mu("a", Mu("a", a)), Mu("a", Mu("a1", Atom("a1")))),
    (Mu("a", b), Mu("a", b)),
    (Arrow(Mu("a", a), Mu("a", a)), Arrow(Mu("a", a), Mu("a1", Atom("a1")))),
    (Arrow(a, Mu("a", a)), Arrow(a, Mu("a1", Atom("a1")))),
])
def test_barendregt(t, expected):
    assert barendregt(t) == expected


def test_paths():
    t = parse("(mu a . a) -> b")
    assert subterm(t, (0, 0)) == a
    assert replace_at(t, (1,), c) == parse("(mu a . a) -> c")
    assert list(positions(t)) == [(), (0,), (0, 0), (1,)]


@given(mu_types)
def test_round_trip(t):
    assert parse(pretty(t)) == t


@given(mu_types)
def test_barendregt_properties(t):
    u = barendregt(t)
    assert is_barendregt(u)
    assert alpha_eq(t, u)
    assert length(u) == length(t) >= 1
    assert free_vars(u) == free_vars(t)
    assert barendregt(u) == u
