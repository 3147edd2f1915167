"""Alpha-equivalence, nameless representatives and substitution.

Two views of a type coexist.  The named one (``syntax.MuType``) is what users
write and what the named decision procedure manipulates.  The nameless one
(``Canon``) replaces bound occurrences by the distance to their binder, so
alpha-equivalent types have equal representatives and class-level
computations can use plain hashing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count
from typing import Iterable, Union

from .syntax import Arrow, Atom, Mu, MuType, free_vars, fresh_name, pretty

__all__ = [
    "FreeAtom",
    "Bound",
    "CArrow",
    "CMu",
    "Canon",
    "canonicalize",
    "alpha_eq",
    "substitute",
    "fresh_name",
    "shift",
    "instantiate",
    "contract",
    "loose",
    "cfree_names",
    "remap_loose",
    "abstract_names",
    "name_canonical",
    "canonical_str",
]


@dataclass(frozen=True, slots=True)
class FreeAtom:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("F", self.name)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class Bound:
    index: int
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("B", self.index)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class CArrow:
    left: Canon
    right: Canon
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("A", self.left, self.right)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True, slots=True)
class CMu:
    body: Canon
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("M", self.body)))

    def __hash__(self):
        return self._hash


Canon = Union[FreeAtom, Bound, CArrow, CMu]


def canonicalize(t: MuType, outer: Iterable[str] = ()) -> Canon:
    """Nameless form of ``t``.

    ``outer`` lists names bound outside ``t``, outermost first; they become
    loose indices (used for the frozen prefix of annotated types).
    """
    def go(t: MuType, scope: tuple[str, ...]) -> Canon:
        match t:
            case Atom(name):
                # innermost binder wins
                for i in range(len(scope) - 1, -1, -1):
                    if scope[i] == name:
                        return Bound(len(scope) - 1 - i)
                return FreeAtom(name)
            case Arrow(left, right):
                return CArrow(go(left, scope), go(right, scope))
            case Mu(binder, body):
                return CMu(go(body, scope + (binder,)))
        raise TypeError(f"not a mu-type: {t!r}")

    return go(t, tuple(outer))


def alpha_eq(s: MuType, t: MuType) -> bool:
    """True iff ``s`` and ``t`` differ only in the names of bound variables.

    Compares the two named trees directly, pairing binders as they are
    entered; it does not go through ``canonicalize``.
    """
    def lookup(env: tuple[str, ...], name: str) -> int | None:
        for i in range(len(env) - 1, -1, -1):
            if env[i] == name:
                return i
        return None

    def go(s: MuType, t: MuType, ls: tuple[str, ...], rs: tuple[str, ...]) -> bool:
        match s, t:
            case Atom(x), Atom(y):
                i, j = lookup(ls, x), lookup(rs, y)
                if i is None and j is None:
                    return x == y
                return i == j
            case Arrow(a1, a2), Arrow(b1, b2):
                return go(a1, b1, ls, rs) and go(a2, b2, ls, rs)
            case Mu(x, a), Mu(y, b):
                return go(a, b, ls + (x,), rs + (y,))
        return False

    return go(s, t, (), ())


def substitute(t: MuType, v: str, s: MuType) -> MuType:
    """``t[v := s]``, renaming a binder of ``t`` only when it would capture."""
    fv_s = free_vars(s)

    def go(t: MuType) -> MuType:
        match t:
            case Atom(name):
                return s if name == v else t
            case Arrow(left, right):
                l, r = go(left), go(right)
                return t if (l is left and r is right) else Arrow(l, r)
            case Mu(binder, body):
                if binder == v or v not in free_vars(body):
                    return t
                if binder in fv_s:
                    new = fresh_name(binder, fv_s | free_vars(body) | {v})
                    body = substitute(body, binder, Atom(new))
                    binder = new
                return Mu(binder, go(body))
        raise TypeError(f"not a mu-type: {t!r}")

    return go(t)


# ---------------------------------------------------------------------------
# Nameless operations

@lru_cache(maxsize=1 << 18)
def loose(t: Canon) -> frozenset[int]:
    """Indices of ``t`` that point past its root (relative to depth 0)."""
    match t:
        case FreeAtom():
            return frozenset()
        case Bound(i):
            return frozenset((i,))
        case CArrow(left, right):
            return loose(left) | loose(right)
        case CMu(body):
            return frozenset(i - 1 for i in loose(body) if i > 0)
    raise TypeError(f"not a canonical type: {t!r}")


@lru_cache(maxsize=1 << 18)
def cfree_names(t: Canon) -> frozenset[str]:
    match t:
        case FreeAtom(name):
            return frozenset((name,))
        case Bound():
            return frozenset()
        case CArrow(left, right):
            return cfree_names(left) | cfree_names(right)
        case CMu(body):
            return cfree_names(body)
    raise TypeError(f"not a canonical type: {t!r}")


def shift(t: Canon, by: int, cutoff: int = 0) -> Canon:
    if by == 0 or not loose(t) or max(loose(t)) < cutoff:
        return t
    match t:
        case Bound(i):
            return Bound(i + by) if i >= cutoff else t
        case CArrow(left, right):
            return CArrow(shift(left, by, cutoff), shift(right, by, cutoff))
        case CMu(body):
            return CMu(shift(body, by, cutoff + 1))
    return t


def instantiate(body: Canon, s: Canon) -> Canon:
    """Replace index 0 of ``body`` by ``s`` and close the gap in the others."""
    def go(t: Canon, depth: int) -> Canon:
        if not loose(t) or max(loose(t)) < depth:
            return t
        match t:
            case Bound(i):
                if i == depth:
                    return shift(s, depth)
                return Bound(i - 1) if i > depth else t
            case CArrow(left, right):
                return CArrow(go(left, depth), go(right, depth))
            case CMu(inner):
                return CMu(go(inner, depth + 1))
        return t

    return go(body, 0)


@lru_cache(maxsize=1 << 18)
def contract(t: CMu) -> Canon:
    """One unfolding of a binder: the body with the binder replaced by ``t``."""
    if not isinstance(t, CMu):
        raise TypeError(f"not a binder: {t!r}")
    return instantiate(t.body, t)


def remap_loose(t: Canon, mapping: dict[int, int]) -> Canon:
    """Renumber loose indices according to ``mapping`` (indices at depth 0)."""
    def go(t: Canon, depth: int) -> Canon:
        match t:
            case Bound(i):
                if i >= depth:
                    return Bound(mapping[i - depth] + depth)
                return t
            case CArrow(left, right):
                return CArrow(go(left, depth), go(right, depth))
            case CMu(body):
                return CMu(go(body, depth + 1))
        return t

    return go(t, 0)


def abstract_names(t: Canon, names: tuple[str, ...]) -> Canon:
    """Turn the free atoms ``names`` (outermost first) into loose indices.

    Existing loose indices are shifted past the new ones.
    """
    if not names:
        return t
    n = len(names)
    position = {name: n - 1 - i for i, name in enumerate(names)}

    def go(t: Canon, depth: int) -> Canon:
        match t:
            case FreeAtom(name) if name in position:
                return Bound(position[name] + depth)
            case Bound(i):
                return Bound(i + n) if i >= depth else t
            case CArrow(left, right):
                return CArrow(go(left, depth), go(right, depth))
            case CMu(body):
                return CMu(go(body, depth + 1))
        return t

    return go(t, 0)


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _letter_names():
    for i in count():
        for ch in _LETTERS:
            yield ch if i == 0 else f"{ch}{i}"


def name_canonical(t: Canon, outer: Iterable[str] = (), avoid: Iterable[str] = ()) -> MuType:
    """A named representative of ``t``.

    Loose indices resolve to ``outer`` (outermost first).  Binders get
    distinct names, none of which clash with free atoms, ``outer`` or
    ``avoid``, so the result satisfies the variable convention.
    """
    outer = tuple(outer)
    used = set(cfree_names(t)) | set(outer) | set(avoid)
    supply = _letter_names()

    def pick() -> str:
        for name in supply:
            if name not in used:
                used.add(name)
                return name
        raise AssertionError("unreachable")

    def go(t: Canon, scope: tuple[str, ...]) -> MuType:
        match t:
            case FreeAtom(name):
                return Atom(name)
            case Bound(i):
                if i >= len(scope):
                    raise ValueError(f"index {i} has no binder")
                return Atom(scope[len(scope) - 1 - i])
            case CArrow(left, right):
                return Arrow(go(left, scope), go(right, scope))
            case CMu(body):
                name = pick()
                return Mu(name, go(body, scope + (name,)))
        raise TypeError(f"not a canonical type: {t!r}")

    return go(t, outer)


def canonical_str(t: Canon) -> str:
    return pretty(name_canonical(t))
