"""Bounded ground truth that does not use the derivation search.

Positive evidence is a common reduct found by breadth-first search (enough,
because mu-reduction is confluent).  Negative evidence is a difference
between truncated infinite unfoldings, which mu-reduction leaves unchanged.
Anything else is reported as unknown.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .binding import Canon, canonicalize
from .reduction import ArrowNode, CutLeaf, FiniteTree, reduct_distances, truncated_tree
from .syntax import MuType

__all__ = [
    "OracleAnswer",
    "OracleVerdict",
    "common_reduct_search",
    "tree_difference",
    "tree_distinct",
    "verdict",
    "DEFAULT_BFS_DEPTH",
    "DEFAULT_TREE_DEPTH",
]

DEFAULT_BFS_DEPTH = 4
DEFAULT_TREE_DEPTH = 6


class OracleAnswer(Enum):
    EQUAL = "EQUAL"
    DISTINCT = "DISTINCT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class OracleVerdict:
    answer: OracleAnswer
    common_reduct: Canon | None = None
    difference_depth: int | None = None


def common_reduct_search(A: MuType, B: MuType, k: int) -> Canon | None:
    """A class reachable from both within ``k`` steps, closest to A and B first."""
    da = reduct_distances(canonicalize(A), k)
    db = reduct_distances(canonicalize(B), k)
    common = da.keys() & db.keys()
    if not common:
        return None
    return min(common, key=lambda c: (da[c] + db[c], max(da[c], db[c]), repr(c)))


def tree_difference(s: FiniteTree, t: FiniteTree, depth: int = 0) -> int | None:
    """Arrow depth of the first position where neither tree is cut and the
    labels differ, or None."""
    if isinstance(s, CutLeaf) or isinstance(t, CutLeaf):
        return None
    if isinstance(s, ArrowNode) and isinstance(t, ArrowNode):
        left = tree_difference(s.left, t.left, depth + 1)
        right = tree_difference(s.right, t.right, depth + 1)
        found = [d for d in (left, right) if d is not None]
        return min(found) if found else None
    return None if s == t else depth


def tree_distinct(A: MuType, B: MuType, d: int) -> bool:
    return tree_difference(truncated_tree(A, d), truncated_tree(B, d)) is not None


def verdict(A: MuType, B: MuType, k: int = DEFAULT_BFS_DEPTH, d: int = DEFAULT_TREE_DEPTH) -> OracleVerdict:
    witness = common_reduct_search(A, B, k)
    if witness is not None:
        return OracleVerdict(OracleAnswer.EQUAL, common_reduct=witness)
    diff = tree_difference(truncated_tree(A, d), truncated_tree(B, d))
    if diff is not None:
        return OracleVerdict(OracleAnswer.DISTINCT, difference_depth=diff)
    return OracleVerdict(OracleAnswer.UNKNOWN)
