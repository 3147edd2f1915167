"""Named abstract syntax of mu-types, with a parser and a minimal-paren printer.

Concrete grammar::

    type  := arrow
    arrow := core ("->" arrow)?
    core  := IDENT | "(" type ")" | "mu" IDENT "." type
    IDENT := [a-zA-Z][a-zA-Z0-9_']*

``->`` associates to the right and the body of ``mu`` extends as far right
as possible.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

__all__ = [
    "Atom",
    "Arrow",
    "Mu",
    "MuType",
    "ParseError",
    "parse",
    "pretty",
    "free_vars",
    "bound_vars",
    "all_names",
    "length",
    "fresh_name",
    "barendregt",
    "is_barendregt",
    "subterm",
    "replace_at",
    "mu",
    "arrows",
]

IDENT_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_']*")
RESERVED = frozenset({"mu"})


@dataclass(frozen=True, slots=True)
class Atom:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("Atom", self.name)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True, slots=True)
class Arrow:
    left: MuType
    right: MuType
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("Arrow", self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True, slots=True)
class Mu:
    binder: str
    body: MuType
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("Mu", self.binder, self.body)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return pretty(self)


MuType = Union[Atom, Arrow, Mu]


def mu(binders: str | Iterable[str], body: MuType) -> MuType:
    """Build ``mu b1 . mu b2 . ... body``; a string is split on whitespace."""
    names = binders.split() if isinstance(binders, str) else list(binders)
    for name in reversed(names):
        body = Mu(name, body)
    return body


def arrows(*parts: MuType) -> MuType:
    """Right-nested arrow ``p0 -> p1 -> ... -> pn``."""
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = Arrow(part, result)
    return result


# ---------------------------------------------------------------------------
# Parsing

class ParseError(ValueError):
    """Raised on malformed input; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN_RE = re.compile(r"\s*(?:(->)|([().])|([a-zA-Z][a-zA-Z0-9_']*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        arrow, punct, ident = m.groups()
        start = m.start(m.lastindex)
        if arrow:
            tokens.append(("ARROW", arrow, start))
        elif punct:
            tokens.append((punct, punct, start))
        elif ident == "mu":
            tokens.append(("MU", ident, start))
        else:
            tokens.append(("IDENT", ident, start))
        pos = m.end()
    tokens.append(("EOF", "", end))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ParseError(f"expected {kind.lower()}, found {what}", tok[2])
        self.i += 1
        return tok

    def type_(self) -> MuType:
        left = self.core()
        if self.peek()[0] == "ARROW":
            self.i += 1
            return Arrow(left, self.type_())
        return left

    def core(self) -> MuType:
        kind, text, pos = self.peek()
        if kind == "IDENT":
            self.i += 1
            return Atom(text)
        if kind == "(":
            self.i += 1
            inner = self.type_()
            if self.peek()[0] != ")":
                raise ParseError("unbalanced parentheses: expected ')'", self.peek()[2])
            self.i += 1
            return inner
        if kind == "MU":
            self.i += 1
            binder = self.take("IDENT")[1]
            self.take(".")
            return Mu(binder, self.type_())
        if kind == "EOF":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {text!r}", pos)


def parse(text: str) -> MuType:
    """Parse the concrete syntax of a mu-type.

    >>> parse("mu a . a -> a")
    Mu(binder='a', body=Arrow(left=Atom(name='a'), right=Atom(name='a')))
    """
    if not text.strip():
        raise ParseError("empty input", 0)
    p = _Parser(text)
    result = p.type_()
    kind, tok, pos = p.peek()
    if kind != "EOF":
        if kind == ")":
            raise ParseError("unbalanced parentheses: unexpected ')'", pos)
        raise ParseError(f"unexpected token {tok!r}", pos)
    return result


# ---------------------------------------------------------------------------
# Printing

def pretty(t: MuType) -> str:
    """Render ``t`` with the fewest parentheses that still parse back to ``t``."""
    match t:
        case Atom(name):
            return name
        case Mu(binder, body):
            return f"mu {binder} . {pretty(body)}"
        case Arrow(left, right):
            lhs = pretty(left)
            if not isinstance(left, Atom):
                lhs = f"({lhs})"
            return f"{lhs} -> {pretty(right)}"
    raise TypeError(f"not a mu-type: {t!r}")


# ---------------------------------------------------------------------------
# Variables and measures

def free_vars(t: MuType) -> frozenset[str]:
    match t:
        case Atom(name):
            return frozenset((name,))
        case Arrow(left, right):
            return free_vars(left) | free_vars(right)
        case Mu(binder, body):
            return free_vars(body) - {binder}
    raise TypeError(f"not a mu-type: {t!r}")


def bound_vars(t: MuType) -> frozenset[str]:
    """Names used as binders anywhere in ``t``."""
    match t:
        case Atom():
            return frozenset()
        case Arrow(left, right):
            return bound_vars(left) | bound_vars(right)
        case Mu(binder, body):
            return bound_vars(body) | {binder}
    raise TypeError(f"not a mu-type: {t!r}")


def all_names(t: MuType) -> frozenset[str]:
    return free_vars(t) | bound_vars(t)


def length(t: MuType) -> int:
    """Size measure: one per atom, one plus the parts for arrows and binders."""
    match t:
        case Atom():
            return 1
        case Arrow(left, right):
            return 1 + length(left) + length(right)
        case Mu(_, body):
            return 1 + length(body)
    raise TypeError(f"not a mu-type: {t!r}")


_SUFFIX_RE = re.compile(r"^(.*?)(\d*)$")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """First of ``base``, ``stem1``, ``stem2``, ... not in ``avoid``.

    ``stem`` is ``base`` without a trailing numeric suffix, so repeated
    renaming of ``a`` yields ``a1``, ``a2`` rather than ``a11``.
    """
    avoid = avoid if isinstance(avoid, (set, frozenset)) else set(avoid)
    if base not in avoid:
        return base
    stem = _SUFFIX_RE.match(base).group(1) or base
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def barendregt(t: MuType) -> MuType:
    """Alpha-rename so binders are pairwise distinct and distinct from free names.

    Binders are visited left to right; each keeps its name if unused so far,
    otherwise it gets the first free name in the ``fresh_name`` sequence.
    """
    used = set(free_vars(t))

    def go(t: MuType, env: dict[str, str]) -> MuType:
        match t:
            case Atom(name):
                new = env.get(name, name)
                return t if new == name else Atom(new)
            case Arrow(left, right):
                return Arrow(go(left, env), go(right, env))
            case Mu(binder, body):
                new = fresh_name(binder, used)
                used.add(new)
                return Mu(new, go(body, {**env, binder: new}))
        raise TypeError(f"not a mu-type: {t!r}")

    return go(t, {})


def is_barendregt(t: MuType) -> bool:
    seen: set[str] = set()
    free = free_vars(t)

    def go(t: MuType) -> bool:
        match t:
            case Atom():
                return True
            case Arrow(left, right):
                return go(left) and go(right)
            case Mu(binder, body):
                if binder in seen or binder in free:
                    return False
                seen.add(binder)
                return go(body)
        return False

    return go(t)


# ---------------------------------------------------------------------------
# Positions

def subterm(t: MuType, path: Iterable[int]) -> MuType:
    """Subterm at ``path``; arrows have children 0 and 1, binders child 0."""
    for i in path:
        match t:
            case Arrow(left, right):
                t = (left, right)[i]
            case Mu(_, body) if i == 0:
                t = body
            case _:
                raise IndexError(f"no child {i} in {pretty(t)}")
    return t


def replace_at(t: MuType, path: tuple[int, ...], new: MuType) -> MuType:
    if not path:
        return new
    head, rest = path[0], path[1:]
    match t:
        case Arrow(left, right):
            if head == 0:
                return Arrow(replace_at(left, rest, new), right)
            return Arrow(left, replace_at(right, rest, new))
        case Mu(binder, body) if head == 0:
            return Mu(binder, replace_at(body, rest, new))
    raise IndexError(f"no child {head} in {pretty(t)}")


def positions(t: MuType) -> Iterator[tuple[int, ...]]:
    """All positions of ``t`` in pre-order."""
    yield ()
    match t:
        case Arrow(left, right):
            for p in positions(left):
                yield (0, *p)
            for p in positions(right):
                yield (1, *p)
        case Mu(_, body):
            for p in positions(body):
                yield (0, *p)
