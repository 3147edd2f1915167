"""Unfolding of recursive types: one-step reducts, bounded closures,
standard reductions and truncated infinite-tree unfolding."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .binding import (
    Bound,
    CArrow,
    CMu,
    Canon,
    FreeAtom,
    canonicalize,
    contract,
)
from .syntax import Arrow, Atom, Mu, MuType, barendregt, positions, replace_at, subterm
from .binding import substitute

__all__ = [
    "NotAMuRedex",
    "ReductionStep",
    "contract_mu",
    "one_step_reducts",
    "reducts_to_depth",
    "reduct_distances",
    "reduction_graph",
    "standard_reducts",
    "ArrowNode",
    "AtomLeaf",
    "CutLeaf",
    "LoopLeaf",
    "FiniteTree",
    "truncated_tree",
    "head_unfold",
]


class NotAMuRedex(ValueError):
    pass


@dataclass(frozen=True)
class ReductionStep:
    source: MuType
    target: MuType
    redex_path: tuple[int, ...]


def contract_mu(t: MuType) -> MuType:
    """``mu b . A  ->  A[b := mu b . A]``."""
    if not isinstance(t, Mu):
        raise NotAMuRedex(f"not a mu-redex: {t}")
    return substitute(t.body, t.binder, t)


def one_step_reducts(t: MuType) -> list[ReductionStep]:
    """One step per binder occurrence, in pre-order of redex position."""
    steps = []
    for path in positions(t):
        redex = subterm(t, path)
        if isinstance(redex, Mu):
            target = barendregt(replace_at(t, path, contract_mu(redex)))
            steps.append(ReductionStep(t, target, path))
    return steps


# ---------------------------------------------------------------------------
# Class-level closures

@lru_cache(maxsize=1 << 16)
def _class_steps(t: Canon) -> tuple[Canon, ...]:
    """Targets of all one-step reductions of the class ``t``."""
    match t:
        case FreeAtom() | Bound():
            return ()
        case CArrow(left, right):
            return tuple(CArrow(l, right) for l in _class_steps(left)) + tuple(
                CArrow(left, r) for r in _class_steps(right)
            )
        case CMu(body):
            return (contract(t),) + tuple(CMu(b) for b in _class_steps(body))
    raise TypeError(f"not a canonical type: {t!r}")


def _as_canon(t: MuType | Canon) -> Canon:
    return canonicalize(t) if isinstance(t, (Atom, Arrow, Mu)) else t


def reducts_to_depth(t: MuType | Canon, k: int) -> frozenset[Canon]:
    """All classes reachable from ``t`` in at most ``k`` steps (``t`` included)."""
    return frozenset(reduct_distances(_as_canon(t), k))


def reduct_distances(start: Canon, k: int) -> dict[Canon, int]:
    dist = {start: 0}
    frontier = deque([start])
    while frontier:
        c = frontier.popleft()
        d = dist[c]
        if d == k:
            continue
        for nxt in _class_steps(c):
            if nxt not in dist:
                dist[nxt] = d + 1
                frontier.append(nxt)
    return dist


def reduction_graph(t: MuType | Canon, k: int) -> tuple[dict[Canon, int], set[tuple[Canon, Canon]]]:
    """Classes within ``k`` steps with their distance, and the step edges among them."""
    dist = reduct_distances(_as_canon(t), k)
    edges = set()
    for c, d in dist.items():
        if d < k:
            for nxt in _class_steps(c):
                edges.add((c, nxt))
    return dist, edges


def standard_reducts(t: MuType | Canon, k: int) -> frozenset[Canon]:
    """Classes reachable by a standard reduction of at most ``k`` contractions.

    Standard reductions are generated by: the empty reduction; a head
    contraction followed by a standard reduction; a standard reduction under
    the head binder; and interleavings of standard reductions of the two
    sides of an arrow.
    """
    return frozenset(_standard(_as_canon(t), k))


@lru_cache(maxsize=1 << 16)
def _standard(t: Canon, k: int) -> dict[Canon, int]:
    # class -> fewest contractions of a standard reduction reaching it
    best: dict[Canon, int] = {t: 0}

    def offer(c: Canon, n: int) -> None:
        if n <= k and n < best.get(c, k + 1):
            best[c] = n

    match t:
        case CMu(body):
            if k >= 1:
                for c, n in _standard(contract(t), k - 1).items():
                    offer(c, n + 1)
            for c, n in _standard(body, k).items():
                offer(CMu(c), n)
        case CArrow(left, right):
            lefts = _standard(left, k)
            rights = _standard(right, k)
            for cl, nl in lefts.items():
                for cr, nr in rights.items():
                    offer(CArrow(cl, cr), nl + nr)
    return best


# ---------------------------------------------------------------------------
# Truncated trees

@dataclass(frozen=True)
class ArrowNode:
    left: FiniteTree
    right: FiniteTree


@dataclass(frozen=True)
class AtomLeaf:
    name: str


@dataclass(frozen=True)
class CutLeaf:
    pass


@dataclass(frozen=True)
class LoopLeaf:
    pass


FiniteTree = Union[ArrowNode, AtomLeaf, CutLeaf, LoopLeaf]


def head_unfold(t: Canon) -> Canon | None:
    """Unfold head binders until an atom or arrow shows; None if it cycles."""
    seen = set()
    while isinstance(t, CMu):
        if t in seen:
            return None
        seen.add(t)
        t = contract(t)
    return t


def truncated_tree(t: MuType | Canon, d: int) -> FiniteTree:
    """The infinite unfolding of ``t`` cut off below ``d`` arrow levels."""
    def go(t: Canon, d: int) -> FiniteTree:
        h = head_unfold(t)
        match h:
            case None:
                return LoopLeaf()
            case FreeAtom(name):
                return AtomLeaf(name)
            case CArrow(left, right):
                if d == 0:
                    return CutLeaf()
                return ArrowNode(go(left, d - 1), go(right, d - 1))
        raise ValueError(f"unbound index in {t!r}")

    return go(_as_canon(t), d)


def tree_str(tree: FiniteTree) -> str:
    match tree:
        case AtomLeaf(name):
            return name
        case CutLeaf():
            return "*"
        case LoopLeaf():
            return "_|_"
        case ArrowNode(left, right):
            return f"({tree_str(left)} -> {tree_str(right)})"
    raise TypeError(tree)
