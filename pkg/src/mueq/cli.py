"""Command-line front end.

Exit codes: ``decide`` 0 equal / 1 not equal / 2 error; ``oracle`` 0 equal /
1 distinct / 3 unknown / 2 error; ``corpus`` 0 pass / 1 fail / 2 malformed.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .annotated import sc
from .binding import canonical_str
from .decider import Mode, check_proof, decide, export_proof
from .oracle import DEFAULT_BFS_DEPTH, DEFAULT_TREE_DEPTH, OracleAnswer, verdict
from .reduction import reduction_graph, standard_reducts, tree_str, truncated_tree
from .syntax import MuType, ParseError, length, parse

EXIT_EQUAL, EXIT_NOT_EQUAL, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2, 3

EXPECTATIONS = ("EQUAL", "NOT_EQUAL", "ANY")


class CorpusError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class CorpusEntry:
    lhs: MuType
    rhs: MuType
    expected: str
    line: int


@dataclass
class EntryResult:
    entry: CorpusEntry
    classes: str
    named: str
    oracle: str
    sc_sizes: tuple[int, int]
    seconds: float
    modes_agree: bool
    oracle_agrees: bool
    expectation_met: bool

    @property
    def ok(self) -> bool:
        return self.modes_agree and self.oracle_agrees and self.expectation_met


@dataclass
class RunReport:
    results: list[EntryResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)


def parse_corpus(text: str) -> list[CorpusEntry]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(";")]
        if len(fields) != 3:
            raise CorpusError(lineno, f"expected 'LHS ; RHS ; EXPECTED', got {raw!r}")
        lhs, rhs, expected = fields
        if expected not in EXPECTATIONS:
            raise CorpusError(lineno, f"expectation must be one of {', '.join(EXPECTATIONS)}")
        try:
            entries.append(CorpusEntry(parse(lhs), parse(rhs), expected, lineno))
        except ParseError as exc:
            raise CorpusError(lineno, str(exc)) from exc
    return entries


def run_corpus(entries: list[CorpusEntry], bfs_depth: int = DEFAULT_BFS_DEPTH,
               tree_depth: int = DEFAULT_TREE_DEPTH) -> RunReport:
    report = RunReport()
    for entry in entries:
        start = time.perf_counter()
        vc = decide(entry.lhs, entry.rhs, Mode.CLASSES)
        vn = decide(entry.lhs, entry.rhs, Mode.NAMED)
        ov = verdict(entry.lhs, entry.rhs, bfs_depth, tree_depth)
        elapsed = time.perf_counter() - start
        if ov.answer is OracleAnswer.EQUAL:
            oracle_agrees = vc.equal
        elif ov.answer is OracleAnswer.DISTINCT:
            oracle_agrees = not vc.equal
        else:
            oracle_agrees = True
        report.results.append(EntryResult(
            entry=entry,
            classes=vc.answer.value,
            named=vn.answer.value,
            oracle=ov.answer.value,
            sc_sizes=(len(sc(entry.lhs)), len(sc(entry.rhs))),
            seconds=elapsed,
            modes_agree=vc.answer is vn.answer,
            oracle_agrees=oracle_agrees,
            expectation_met=entry.expected in ("ANY", vc.answer.value),
        ))
    return report


# ---------------------------------------------------------------------------
# Commands

def cmd_decide(args: argparse.Namespace) -> int:
    A, B = parse(args.lhs), parse(args.rhs)
    v = decide(A, B, Mode(args.mode))
    print(f"{v.answer.value}  (goals explored {v.stats.explored}, distinct {v.stats.distinct_goals}, "
          f"pruned {v.stats.pruned})")
    if v.proof is not None:
        assert check_proof(v.proof)
        if args.proof:
            Path(args.proof).write_bytes(export_proof(v.proof, "json"))
        if args.dot:
            Path(args.dot).write_bytes(export_proof(v.proof, "dot"))
    return EXIT_EQUAL if v.equal else EXIT_NOT_EQUAL


def cmd_sc(args: argparse.Namespace) -> int:
    t = parse(args.type)
    closure = sc(t)
    print(f"|SC| = {len(closure)}")
    if args.list or not args.check_bound:
        for member in sorted(str(c) for c in closure):
            print(f"  {member}")
    if args.check_bound:
        n = length(t)
        ok = len(closure) <= 3 ** n
        print(f"|SC| = {len(closure)}, l = {n}, 3^l = {3 ** n}: {'PASS' if ok else 'FAIL'}")
        return 0 if ok else 1
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    t = parse(args.type)
    dist, edges = reduction_graph(t, args.depth)
    if args.standard:
        shown = standard_reducts(t, args.depth)
        print(f"{len(shown)} classes reachable by standard reductions of <= {args.depth} steps")
    else:
        shown = set(dist)
        print(f"{len(shown)} classes reachable in <= {args.depth} steps")
    for c in sorted(shown, key=lambda c: (dist.get(c, args.depth), canonical_str(c))):
        print(f"  {dist.get(c, '?')}  {canonical_str(c)}")
    if args.dot:
        ids = {c: f"n{i}" for i, c in enumerate(dist)}
        lines = ["digraph reductions {", "  node [shape=box];"]
        for c, i in ids.items():
            style = ", style=bold" if c in shown and args.standard else ""
            label = canonical_str(c).replace('"', '\\"')
            lines.append(f'  {i} [label="{label}"{style}];')
        for src, dst in sorted(edges, key=lambda e: (ids[e[0]], ids.get(e[1], ""))):
            if dst in ids:
                lines.append(f"  {ids[src]} -> {ids[dst]};")
        lines.append("}")
        Path(args.dot).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0


def cmd_tree(args: argparse.Namespace) -> int:
    print(tree_str(truncated_tree(parse(args.type), args.tree_depth)))
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    A, B = parse(args.lhs), parse(args.rhs)
    ov = verdict(A, B, args.bfs_depth, args.tree_depth)
    if ov.answer is OracleAnswer.EQUAL:
        print(f"EQUAL  common reduct: {canonical_str(ov.common_reduct)}")
        return EXIT_EQUAL
    if ov.answer is OracleAnswer.DISTINCT:
        print(f"DISTINCT  trees differ at depth {ov.difference_depth}")
        return EXIT_NOT_EQUAL
    print(f"UNKNOWN  no common reduct within {args.bfs_depth} steps, "
          f"trees agree to depth {args.tree_depth}")
    return EXIT_UNKNOWN


def cmd_corpus(args: argparse.Namespace) -> int:
    try:
        entries = parse_corpus(Path(args.path).read_text(encoding="utf-8"))
    except CorpusError as exc:
        print(f"malformed corpus: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = run_corpus(entries, args.bfs_depth, args.tree_depth)
    for r in report.results:
        status = "ok  " if r.ok else "FAIL"
        print(f"{status} line {r.entry.line}: expected {r.entry.expected}, classes {r.classes}, "
              f"named {r.named}, oracle {r.oracle}, |SC| {r.sc_sizes[0]}x{r.sc_sizes[1]}, "
              f"{r.seconds * 1000:.1f} ms")
    failed = sum(not r.ok for r in report.results)
    print(f"{len(report.results)} entries, {failed} failed: {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mueq", description="Weak equality of recursive (mu) types.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide weak equality and optionally write the derivation")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.CLASSES.value)
    p.add_argument("--proof", metavar="PATH", help="write the derivation as JSON")
    p.add_argument("--dot", metavar="PATH", help="write the derivation as Graphviz DOT")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("sc", help="closure of a type under the annotated reduction")
    p.add_argument("type")
    p.add_argument("--list", action="store_true", help="print every member (the default unless --check-bound is given)")
    p.add_argument("--check-bound", action="store_true", help="compare |SC| against 3^l")
    p.set_defaults(func=cmd_sc)

    p = sub.add_parser("reduce", help="list reducts up to a number of steps")
    p.add_argument("type")
    p.add_argument("--depth", type=int, default=2, metavar="K")
    p.add_argument("--standard", action="store_true", help="only reducts reachable by standard reductions")
    p.add_argument("--dot", metavar="PATH", help="write the reduction graph as Graphviz DOT")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("tree", help="truncated infinite unfolding")
    p.add_argument("type")
    p.add_argument("--tree-depth", type=int, default=DEFAULT_TREE_DEPTH, metavar="D")
    p.set_defaults(func=cmd_tree)

    for name, func, helptext in (("oracle", cmd_oracle, "bounded independent check"),
                                 ("corpus", cmd_corpus, "check a file of 'LHS ; RHS ; EXPECTED' lines")):
        p = sub.add_parser(name, help=helptext)
        if name == "oracle":
            p.add_argument("lhs")
            p.add_argument("rhs")
        else:
            p.add_argument("path")
        p.add_argument("--bfs-depth", type=int, default=DEFAULT_BFS_DEPTH, metavar="K")
        p.add_argument("--tree-depth", type=int, default=DEFAULT_TREE_DEPTH, metavar="D")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("depth", "bfs_depth", "tree_depth"):
        if getattr(args, name, 0) < 0:
            print(f"error: --{name.replace('_', '-')} must be >= 0", file=sys.stderr)
            return EXIT_ERROR
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
