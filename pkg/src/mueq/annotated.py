"""Annotated types ``(mu a1 ... an) A``: a type whose leading binders are frozen.

Frozen prefix variables are free in the body and pairwise distinct.  The
module offers a named form (``AnnType``) and a class form (``CAnn``) where the
prefix becomes the outermost loose indices of a nameless body, so two
annotated types are alpha-equivalent iff their ``CAnn`` are equal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .binding import (
    CArrow,
    CMu,
    Canon,
    alpha_eq,
    canonicalize,
    cfree_names,
    contract,
    loose,
    name_canonical,
    remap_loose,
    substitute,
)
from .syntax import (
    Arrow,
    Atom,
    Mu,
    MuType,
    ParseError,
    free_vars,
    fresh_name,
    length,
    mu,
    parse,
    pretty,
)

__all__ = [
    "AnnType",
    "CAnn",
    "restrict",
    "ann_step_reducts",
    "ann_canonical",
    "ann_named",
    "ann_alpha_eq",
    "ann_free_vars",
    "ann_substitute",
    "ann_prepend",
    "parse_ann",
    "cann",
    "crestrict",
    "cann_step_reducts",
    "sc",
    "sc_bound_holds",
]


@dataclass(frozen=True)
class AnnType:
    """Named annotated type; build through ``restrict`` to drop unused prefix names."""

    prefix: tuple[str, ...]
    body: MuType

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if len(set(self.prefix)) != len(self.prefix):
            raise ValueError(f"repeated frozen variable in {self.prefix}")
        missing = set(self.prefix) - free_vars(self.body)
        if missing:
            raise ValueError(f"frozen variables {sorted(missing)} not free in body")

    def __str__(self):
        if not self.prefix:
            return pretty(self.body)
        return f"(mu {' '.join(self.prefix)}) {pretty(self.body)}"


@dataclass(frozen=True, slots=True)
class CAnn:
    """Alpha-class of an annotated type.

    ``arity`` frozen binders; in ``body`` loose index ``arity - 1 - i`` refers
    to the ``i``-th prefix variable (outermost first).
    """

    arity: int
    body: Canon
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.arity, self.body)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return str(ann_named(self))


# ---------------------------------------------------------------------------
# Named form

def restrict(prefix: Iterable[str], body: MuType) -> AnnType:
    """``(mu prefix) [] body``: keep only prefix names free in ``body``."""
    prefix = tuple(prefix)
    if len(set(prefix)) != len(prefix):
        raise ValueError(f"repeated frozen variable in {prefix}")
    fv = free_vars(body)
    return AnnType(tuple(v for v in prefix if v in fv), body)


def ann_free_vars(a: AnnType) -> frozenset[str]:
    return free_vars(a.body) - set(a.prefix)


def ann_step_reducts(a: AnnType) -> list[AnnType]:
    """Freeze, unfold and project successors of ``a`` (named)."""
    out = []
    match a.body:
        case Mu(binder, inner):
            if binder in free_vars(inner):
                out.append(AnnType(a.prefix + (binder,), inner))
            out.append(AnnType(a.prefix, substitute(inner, binder, a.body)))
        case Arrow(left, right):
            out.append(restrict(a.prefix, left))
            out.append(restrict(a.prefix, right))
    return out


def ann_canonical(a: AnnType | MuType) -> CAnn:
    if not isinstance(a, AnnType):
        return CAnn(0, canonicalize(a))
    return CAnn(len(a.prefix), canonicalize(a.body, outer=a.prefix))


def ann_named(c: CAnn, avoid: Iterable[str] = ()) -> AnnType:
    """A named representative with conventional, clash-free names."""
    names = []
    used = set(cfree_names(c.body)) | set(avoid)
    letters = "abcdefghijklmnopqrstuvwxyz"
    for i in range(c.arity):
        name = fresh_name(letters[i % 26], used)
        used.add(name)
        names.append(name)
    body = name_canonical(c.body, outer=names, avoid=used)
    return AnnType(tuple(names), body)


def ann_alpha_eq(a: AnnType, b: AnnType) -> bool:
    """Named alpha-equivalence of annotated types (prefixes compared by position)."""
    if len(a.prefix) != len(b.prefix):
        return False
    return alpha_eq(mu(a.prefix, a.body), mu(b.prefix, b.body))


def ann_substitute(a: AnnType, v: str, s: MuType) -> AnnType:
    """``a[v := s]``; prefix names clashing with free names of ``s`` are renamed."""
    if v in a.prefix:
        return a
    fv_s = free_vars(s)
    prefix, body = list(a.prefix), a.body
    for i, name in enumerate(prefix):
        if name in fv_s:
            new = fresh_name(name, fv_s | free_vars(body) | set(prefix) | {v})
            body = substitute(body, name, Atom(new))
            prefix[i] = new
    return AnnType(tuple(prefix), substitute(body, v, s))


def ann_prepend(names: Iterable[str], a: AnnType | CAnn) -> CAnn:
    """``(mu names) [] a`` as a class, i.e. freeze the free atoms ``names`` in front."""
    names = tuple(names)
    if isinstance(a, CAnn):
        a = ann_named(a, avoid=names)
    fv = ann_free_vars(a)
    kept = tuple(n for n in names if n in fv)
    return ann_canonical(AnnType(kept + a.prefix, a.body))


_PREFIX_RE = re.compile(r"^\s*\(\s*mu((?:\s+[a-zA-Z][a-zA-Z0-9_']*)+)\s*\)")


def parse_ann(text: str) -> AnnType:
    """Parse ``"(mu a b) BODY"`` or a bare type (empty prefix)."""
    m = _PREFIX_RE.match(text)
    if m is None:
        return AnnType((), parse(text))
    names = tuple(m.group(1).split())
    if "mu" in names:
        raise ParseError("'mu' is reserved", m.start(1))
    body = parse(text[m.end():])
    return AnnType(names, body)


# ---------------------------------------------------------------------------
# Class form

def cann(t: MuType | AnnType | CAnn) -> CAnn:
    return t if isinstance(t, CAnn) else ann_canonical(t)


def crestrict(arity: int, body: Canon) -> CAnn:
    """Drop prefix positions whose index does not occur in ``body``."""
    used = sorted(i for i in loose(body) if i < arity)
    if len(used) == arity:
        return CAnn(arity, body)
    mapping = {old: new for new, old in enumerate(used)}
    return CAnn(len(used), remap_loose(body, mapping))


@lru_cache(maxsize=1 << 16)
def cann_step_reducts(a: CAnn) -> tuple[CAnn, ...]:
    match a.body:
        case CMu(inner):
            out = []
            if 0 in loose(inner):
                out.append(CAnn(a.arity + 1, inner))
            out.append(CAnn(a.arity, contract(a.body)))
            return tuple(out)
        case CArrow(left, right):
            return (crestrict(a.arity, left), crestrict(a.arity, right))
    return ()


def sc(a: MuType | AnnType | CAnn) -> frozenset[CAnn]:
    """All annotated classes reachable from ``a`` (``a`` included)."""
    start = cann(a)
    return _sc(start)


@lru_cache(maxsize=1 << 14)
def _sc(start: CAnn) -> frozenset[CAnn]:
    seen = {start}
    work = [start]
    while work:
        for nxt in cann_step_reducts(work.pop()):
            if nxt not in seen:
                seen.add(nxt)
                work.append(nxt)
    return frozenset(seen)


def sc_bound_holds(t: MuType) -> bool:
    return len(sc(t)) <= 3 ** length(t)
