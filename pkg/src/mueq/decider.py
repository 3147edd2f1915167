"""Goal-directed search for derivations of ``a = b`` between annotated types.

The five rules are read bottom-up: a goal is closed by ``axiom`` or reduced
to the premises of ``mu-freezing``, ``decomposition``, ``left-mu-step`` or
``right-mu-step``.  A goal that repeats on the current branch is not expanded
again; the goal space is finite, so the search always terminates.

Two modes share the search driver:

* ``Mode.CLASSES`` works on alpha-classes (``CAnn``); sides are compared
  structurally.
* ``Mode.NAMED`` works on named representatives (``AnnType``) and uses
  alpha-equivalence only to close goals and to recognise repeated goals.
"""
from __future__ import annotations

import json
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Union

from .annotated import (
    AnnType,
    CAnn,
    ann_alpha_eq,
    ann_canonical,
    cann,
    crestrict,
    parse_ann,
    restrict,
)
from .binding import CArrow, CMu, contract, loose, substitute
from .syntax import Arrow, Mu, MuType, free_vars

__all__ = [
    "Mode",
    "Rule",
    "Answer",
    "Goal",
    "ProofTree",
    "Stats",
    "Verdict",
    "applicable_rules",
    "decide",
    "decide_classes",
    "decide_named",
    "check_proof",
    "rule_counts",
    "export_proof",
    "proof_from_json",
]


class Mode(Enum):
    CLASSES = "classes"
    NAMED = "named"


class Rule(Enum):
    AXIOM = "axiom"
    LEFT_MU_STEP = "left-mu-step"
    RIGHT_MU_STEP = "right-mu-step"
    MU_FREEZING = "mu-freezing"
    DECOMPOSITION = "decomposition"


class Answer(Enum):
    EQUAL = "EQUAL"
    NOT_EQUAL = "NOT_EQUAL"


Side = Union[CAnn, AnnType]


@dataclass(frozen=True)
class Goal:
    lhs: Side
    rhs: Side
    mode: Mode = Mode.CLASSES

    def key(self) -> tuple[CAnn, CAnn]:
        """Identity of the goal up to renaming of bound and frozen variables."""
        if self.mode is Mode.CLASSES:
            return (self.lhs, self.rhs)
        return (ann_canonical(self.lhs), ann_canonical(self.rhs))

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class ProofTree:
    rule: Rule
    goal: Goal
    children: tuple[ProofTree, ...] = ()

    def nodes(self) -> Iterator[ProofTree]:
        yield self
        for child in self.children:
            yield from child.nodes()

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def rules(self) -> list[Rule]:
        """Rule names in pre-order."""
        return [n.rule for n in self.nodes()]


@dataclass
class Stats:
    explored: int = 0
    distinct_goals: int = 0
    pruned: int = 0


@dataclass
class Verdict:
    answer: Answer
    proof: ProofTree | None
    stats: Stats = field(default_factory=Stats)

    @property
    def equal(self) -> bool:
        return self.answer is Answer.EQUAL


# ---------------------------------------------------------------------------
# Rules

def applicable_rules(g: Goal) -> list[tuple[Rule, list[Goal]]]:
    """Every rule instance whose conclusion is ``g``, in exploration order."""
    if g.mode is Mode.CLASSES:
        return _class_rules(g)
    return _named_rules(g)


def _class_rules(g: Goal) -> list[tuple[Rule, list[Goal]]]:
    l, r = g.lhs, g.rhs
    if l == r:
        return [(Rule.AXIOM, [])]
    if l.arity != r.arity:
        return []
    out = []
    lb, rb = l.body, r.body
    mode = g.mode
    if isinstance(lb, CMu) and isinstance(rb, CMu):
        if 0 in loose(lb.body) and 0 in loose(rb.body):
            out.append((Rule.MU_FREEZING,
                        [Goal(CAnn(l.arity + 1, lb.body), CAnn(r.arity + 1, rb.body), mode)]))
    if isinstance(lb, CArrow) and isinstance(rb, CArrow):
        l1, l2 = crestrict(l.arity, lb.left), crestrict(l.arity, lb.right)
        r1, r2 = crestrict(r.arity, rb.left), crestrict(r.arity, rb.right)
        if _kept(l.arity, lb.left) == _kept(r.arity, rb.left) and \
                _kept(l.arity, lb.right) == _kept(r.arity, rb.right):
            out.append((Rule.DECOMPOSITION, [Goal(l1, r1, mode), Goal(l2, r2, mode)]))
    if isinstance(lb, CMu):
        out.append((Rule.LEFT_MU_STEP, [Goal(CAnn(l.arity, contract(lb)), r, mode)]))
    if isinstance(rb, CMu):
        out.append((Rule.RIGHT_MU_STEP, [Goal(l, CAnn(r.arity, contract(rb)), mode)]))
    return out


def _kept(arity: int, part) -> tuple[int, ...]:
    # prefix positions (outermost first) that occur in part
    used = loose(part)
    return tuple(i for i in range(arity) if arity - 1 - i in used)


def _positions(prefix: tuple[str, ...], part: MuType) -> tuple[int, ...]:
    fv = free_vars(part)
    return tuple(i for i, v in enumerate(prefix) if v in fv)


def _named_rules(g: Goal) -> list[tuple[Rule, list[Goal]]]:
    l, r = g.lhs, g.rhs
    if ann_alpha_eq(l, r):
        return [(Rule.AXIOM, [])]
    if len(l.prefix) != len(r.prefix):
        return []
    out = []
    lb, rb = l.body, r.body
    mode = g.mode
    if isinstance(lb, Mu) and isinstance(rb, Mu):
        if lb.binder in free_vars(lb.body) and rb.binder in free_vars(rb.body):
            out.append((Rule.MU_FREEZING,
                        [Goal(AnnType(l.prefix + (lb.binder,), lb.body),
                              AnnType(r.prefix + (rb.binder,), rb.body), mode)]))
    if isinstance(lb, Arrow) and isinstance(rb, Arrow):
        if _positions(l.prefix, lb.left) == _positions(r.prefix, rb.left) and \
                _positions(l.prefix, lb.right) == _positions(r.prefix, rb.right):
            out.append((Rule.DECOMPOSITION,
                        [Goal(restrict(l.prefix, lb.left), restrict(r.prefix, rb.left), mode),
                         Goal(restrict(l.prefix, lb.right), restrict(r.prefix, rb.right), mode)]))
    if isinstance(lb, Mu):
        unfolded = substitute(lb.body, lb.binder, lb)
        out.append((Rule.LEFT_MU_STEP, [Goal(AnnType(l.prefix, unfolded), r, mode)]))
    if isinstance(rb, Mu):
        unfolded = substitute(rb.body, rb.binder, rb)
        out.append((Rule.RIGHT_MU_STEP, [Goal(l, AnnType(r.prefix, unfolded), mode)]))
    return out


# ---------------------------------------------------------------------------
# Search

@contextmanager
def _recursion_limit(limit: int):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


class _Search:
    def __init__(self):
        self.stats = Stats()
        self.proved: dict[tuple, ProofTree] = {}
        self.failed: set[tuple] = set()
        self.on_branch: set[tuple] = set()
        self.seen: set[tuple] = set()

    def prove(self, goal: Goal) -> tuple[ProofTree | None, bool]:
        """Return a proof or None, and whether branch pruning was involved."""
        key = goal.key()
        self.stats.explored += 1
        if key not in self.seen:
            self.seen.add(key)
            self.stats.distinct_goals += 1
        if key in self.proved:
            return _transport(self.proved[key], goal), False
        if key in self.failed:
            return None, False
        if key in self.on_branch:
            self.stats.pruned += 1
            return None, True

        self.on_branch.add(key)
        pruned = False
        try:
            for rule, premises in applicable_rules(goal):
                subproofs = []
                for premise in premises:
                    sub, sub_pruned = self.prove(premise)
                    pruned = pruned or sub_pruned
                    if sub is None:
                        break
                    subproofs.append(sub)
                else:
                    proof = ProofTree(rule, goal, tuple(subproofs))
                    self.proved[key] = proof
                    return proof, False
        finally:
            self.on_branch.discard(key)
        if not pruned:
            # a failure that depended on the branch may succeed elsewhere
            self.failed.add(key)
        return None, pruned


def _transport(proof: ProofTree, goal: Goal) -> ProofTree:
    """Replay ``proof`` (of an alpha-variant of ``goal``) on ``goal`` itself."""
    if proof.goal == goal:
        return proof
    for rule, premises in applicable_rules(goal):
        if rule is proof.rule:
            children = tuple(_transport(c, p) for c, p in zip(proof.children, premises))
            return ProofTree(rule, goal, children)
    raise AssertionError(f"cannot replay {proof.rule.value} on {goal}")


def decide(A: MuType, B: MuType, mode: Mode = Mode.CLASSES) -> Verdict:
    if mode is Mode.CLASSES:
        root = Goal(cann(A), cann(B), mode)
    else:
        root = Goal(AnnType((), A), AnnType((), B), mode)
    search = _Search()
    with _recursion_limit(20000):
        proof, _ = search.prove(root)
    answer = Answer.EQUAL if proof is not None else Answer.NOT_EQUAL
    return Verdict(answer, proof, search.stats)


def decide_classes(A: MuType, B: MuType) -> Verdict:
    return decide(A, B, Mode.CLASSES)


def decide_named(A: MuType, B: MuType) -> Verdict:
    return decide(A, B, Mode.NAMED)


def check_proof(p: ProofTree) -> bool:
    """Re-validate that every node is a correct instance of its rule."""
    for rule, premises in applicable_rules(p.goal):
        if rule is p.rule and len(premises) == len(p.children):
            if all(c.goal.key() == q.key() for c, q in zip(p.children, premises)):
                return all(check_proof(c) for c in p.children)
    return False


def rule_counts(p: ProofTree) -> dict[Rule, int]:
    counts = {rule: 0 for rule in Rule}
    for rule in p.rules():
        counts[rule] += 1
    return counts


# ---------------------------------------------------------------------------
# Export

def _to_obj(p: ProofTree) -> dict:
    return {
        "rule": p.rule.value,
        "lhs": str(p.goal.lhs),
        "rhs": str(p.goal.rhs),
        "children": [_to_obj(c) for c in p.children],
    }


def export_proof(p: ProofTree, format: str = "json") -> bytes:
    """Serialize as nested JSON objects or as a Graphviz digraph.

    The DOT form has one node per distinct goal; an edge from a goal to a
    premise carries the name of the rule applied.
    """
    fmt = format.lower()
    if fmt == "json":
        return json.dumps(_to_obj(p), indent=2).encode("utf-8")
    if fmt == "dot":
        return _to_dot(p).encode("utf-8")
    raise ValueError(f"unsupported proof format: {format!r}")


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _to_dot(p: ProofTree) -> str:
    ids: dict[str, str] = {}
    lines = ["digraph proof {", '  node [shape=box, fontname="monospace"];']
    edges = []

    def node(tree: ProofTree) -> str:
        label = str(tree.goal)
        if label not in ids:
            ids[label] = f"g{len(ids)}"
            shape = ", style=bold" if tree.rule is Rule.AXIOM else ""
            lines.append(f'  {ids[label]} [label="{_dot_escape(label)}"{shape}];')
        return ids[label]

    def walk(tree: ProofTree) -> None:
        src = node(tree)
        for child in tree.children:
            edge = (src, node(child), tree.rule.value)
            if edge not in edges:
                edges.append(edge)
            walk(child)

    walk(p)
    for src, dst, rule in edges:
        lines.append(f'  {src} -> {dst} [label="{rule}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def proof_from_json(data: bytes | str | dict, mode: Mode = Mode.NAMED) -> ProofTree:
    """Rebuild a proof tree from ``export_proof(..., "json")`` output."""
    if isinstance(data, (bytes, str)):
        data = json.loads(data)

    def side(text: str):
        a = parse_ann(text)
        return a if mode is Mode.NAMED else ann_canonical(a)

    def go(obj: dict) -> ProofTree:
        goal = Goal(side(obj["lhs"]), side(obj["rhs"]), mode)
        return ProofTree(Rule(obj["rule"]), goal, tuple(go(c) for c in obj["children"]))

    return go(data)
