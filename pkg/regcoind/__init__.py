"""regcoind - regular and corule-bounded proof search.

This package decides regular derivability in inference systems given as
backward rule enumerators, optionally bounded by corules, and produces
checkable proof-graph certificates. It ships a command line (``regcoind``)
and an MCP server (``regcoind-mcp``).
"""

from .core import (
    DEFAULT_BUDGET,
    CheckResult,
    GeneralizedSystem,
    InferenceSystem,
    ProofGraph,
    RuleInstance,
    Verdict,
    configure_logging,
    get_default_budget,
    set_default_budget,
    validate_bounded_proof_graph,
    validate_proof_graph,
)
from .proofgraph import distinct_subtree_bound, parse_certificate, render, unfold
from .search import FiniteTree, SearchOutcome, Status, prove_inductive, prove_regular, prove_regular_co
from .server import mcp
from .streams import Lasso, canonicalize, rep

__all__ = [
    "DEFAULT_BUDGET",
    "CheckResult",
    "FiniteTree",
    "GeneralizedSystem",
    "InferenceSystem",
    "Lasso",
    "ProofGraph",
    "RuleInstance",
    "SearchOutcome",
    "Status",
    "Verdict",
    "canonicalize",
    "configure_logging",
    "distinct_subtree_bound",
    "get_default_budget",
    "mcp",
    "parse_certificate",
    "prove_inductive",
    "prove_regular",
    "prove_regular_co",
    "render",
    "rep",
    "set_default_budget",
    "unfold",
    "validate_bounded_proof_graph",
    "validate_proof_graph",
]

__version__ = "0.1.0"
