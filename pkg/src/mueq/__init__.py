"""Decide weak equality of recursive (mu) types.

Typical use::

    >>> from mueq import parse, decide_classes
    >>> decide_classes(parse("mu a . a -> a"), parse("(mu b . b -> b) -> mu c . c -> c")).equal
    True
"""
from .annotated import AnnType, CAnn, ann_step_reducts, restrict, sc, sc_bound_holds
from .binding import Canon, alpha_eq, canonicalize, fresh_name, substitute
from .decider import (
    Answer,
    Goal,
    Mode,
    ProofTree,
    Rule,
    Verdict,
    applicable_rules,
    decide,
    decide_classes,
    decide_named,
    export_proof,
)
from .oracle import OracleAnswer, OracleVerdict, common_reduct_search, tree_distinct, verdict
from .reduction import (
    contract_mu,
    one_step_reducts,
    reducts_to_depth,
    standard_reducts,
    truncated_tree,
)
from .syntax import Arrow, Atom, Mu, MuType, ParseError, barendregt, free_vars, length, parse, pretty


__all__ = [
    "AnnType",
    "CAnn",
    "ann_step_reducts",
    "restrict",
    "sc",
    "sc_bound_holds",
    "Canon",
    "alpha_eq",
    "canonicalize",
    "fresh_name",
    "substitute",
    "Answer",
    "Goal",
    "Mode",
    "ProofTree",
    "Rule",
    "Verdict",
    "applicable_rules",
    "decide",
    "decide_classes",
    "decide_named",
    "export_proof",
    "OracleAnswer",
    "OracleVerdict",
    "common_reduct_search",
    "tree_distinct",
    "verdict",
    "contract_mu",
    "one_step_reducts",
    "reducts_to_depth",
    "standard_reducts",
    "truncated_tree",
    "Arrow",
    "Atom",
    "Mu",
    "MuType",
    "ParseError",
    "barendregt",
    "free_vars",
    "length",
    "parse",
    "pretty",
]
