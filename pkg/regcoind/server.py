"""MCP server for regular and corule-bounded proof search.

This server exposes the search engine to AI agents via MCP. It provides
tools for proving judgments, tabulating the fixed points of a ground system
and checking proof-graph certificates.
"""
from __future__ import annotations

from typing import List, Optional

from fastmcp import FastMCP

from .cli import QuerySystem, UsageError, example_system, ground_query_system, oracle_rows, prove_goal
from .core import ProofGraph, configure_logging, get_default_budget, validate_bounded_proof_graph, validate_proof_graph
from .proofgraph import parse_certificate, render
from .search import FiniteTree
from .syntax import parse_graph_text, parse_ground_text
from .systems import EXAMPLE_NAMES

# Create the MCP server instance (logging configured at run-time)
mcp = FastMCP("regcoind - regular coinduction prover")

_EXAMPLE_NOTES = {
    "allpos": "allpos s: every element of the stream is positive. Goal: allpos 2,1|1",
    "dist": "dist v u d over a graph (graph_text, default the four-node example). Goal: dist a c 2",
    "min": "min z s with the coaxiom min x (x:s). Goal: min 2 |2",
    "add": "add r1 r2 r c over digit streams in base `base`, carry coaxiom. Goal: add |3 |3 |6 0",
}


def _wrap_tool(fn):
    """Execute a tool handler and normalize common error handling."""
    try:
        return fn()
    except (ValueError, RuntimeError, OSError) as exc:
        return {"success": False, "error": str(exc)}


def _query_system(
    example: Optional[str],
    system_text: Optional[str],
    base: int,
    graph_text: Optional[str],
) -> QuerySystem:
    if (example is None) == (system_text is None):
        raise UsageError("Give exactly one of example or system_text.")
    if system_text is not None:
        return ground_query_system(parse_ground_text(system_text))
    graph = parse_graph_text(graph_text) if graph_text else None
    return example_system(example, base, graph)


def prove_payload(
    goal: str,
    example: Optional[str] = None,
    system_text: Optional[str] = None,
    mode: str = "regular",
    budget: Optional[int] = None,
    base: int = 10,
    graph_text: Optional[str] = None,
) -> dict:
    """Plain implementation behind the prove_judgment tool."""
    system = _query_system(example, system_text, base, graph_text)
    judgment = system.read_judgment(goal)
    outcome = prove_goal(system, judgment, mode, budget)
    payload = {
        "success": True,
        "status": outcome.status.value,
        "goal": str(judgment),
        "fuel_used": outcome.fuel_used,
    }
    if isinstance(outcome.certificate, ProofGraph):
        payload["certificate"] = render(outcome.certificate, "structured-text")
        payload["graph"] = render(outcome.certificate, "graph-text")
    elif isinstance(outcome.certificate, FiniteTree):
        payload["certificate"] = outcome.certificate.pretty()
    return payload


def check_payload(
    certificate: str,
    example: Optional[str] = None,
    system_text: Optional[str] = None,
    bounded: bool = False,
    budget: Optional[int] = None,
    base: int = 10,
    graph_text: Optional[str] = None,
) -> dict:
    """Plain implementation behind the check_certificate tool."""
    system = _query_system(example, system_text, base, graph_text)
    cert = parse_certificate(certificate, system.read_judgment)
    if bounded:
        if not system.has_corules:
            raise UsageError(f"Bounded checks need corules; {system.name} has none.")
        result = validate_bounded_proof_graph(system.gen, cert, get_default_budget() if budget is None else budget)
    else:
        result = validate_proof_graph(system.gen.rules, cert)
    return {"success": True, "verdict": result.verdict.value, "diagnostic": result.diagnostic}


def oracle_payload(system_text: str) -> dict:
    """Plain implementation behind the oracle_report tool."""
    rows = oracle_rows(parse_ground_text(system_text))
    return {"success": True, "rows": [dict(row, judgment=str(row["judgment"])) for row in rows]}


def examples_payload() -> dict:
    examples: List[dict] = []
    for name in EXAMPLE_NAMES:
        examples.append({
            "name": name,
            "has_corules": example_system(name).has_corules,
            "parameters": {"dist": ["graph_text"], "add": ["base"]}.get(name, []),
            "description": _EXAMPLE_NOTES[name],
        })
    return {"success": True, "examples": examples}


@mcp.tool()
def prove_judgment(
    goal: str,
    example: Optional[str] = None,
    system_text: Optional[str] = None,
    mode: str = "regular",
    budget: Optional[int] = None,
    base: int = 10,
    graph_text: Optional[str] = None,
) -> dict:
    """Search for a derivation of a judgment.

    Args:
        goal: Judgment in goal syntax, e.g. "dist a c 2" or a ground atom.
        example: Built-in system name (allpos, dist, min, add); excludes system_text.
        system_text: Ground system, one "rule: [a, b] => c" or "corule: [] => a" per line.
        mode: "inductive", "regular" or "regular-co" (needs corules).
        budget: Rule applications to try. Defaults to $REGCOIND_BUDGET or 10000.
        base: Digit base for the add example.
        graph_text: Graph for the dist example, one "node a -> b, d" per line.

    Returns:
        Dictionary with status (PROVED, REFUTED or OUT-OF-FUEL), the rendered
        goal, fuel_used and, on PROVED, the certificate (plus graph-text for
        regular modes).
    """
    return _wrap_tool(lambda: prove_payload(goal, example, system_text, mode, budget, base, graph_text))


@mcp.tool()
def oracle_report(system_text: str) -> dict:
    """Tabulate inductive, regular, coinductive and corule-bounded membership.

    Args:
        system_text: Ground system text with at most 16 judgments.

    Returns:
        Dictionary with one row per judgment: judgment, ind, reg, coind, reg_co.
    """
    return _wrap_tool(lambda: oracle_payload(system_text))


@mcp.tool()
def check_certificate(
    certificate: str,
    example: Optional[str] = None,
    system_text: Optional[str] = None,
    bounded: bool = False,
    budget: Optional[int] = None,
    base: int = 10,
    graph_text: Optional[str] = None,
) -> dict:
    """Check a structured-text proof graph against a system.

    With bounded=True every node must also have a finite proof using the
    corules.

    Returns:
        Dictionary with verdict (valid, invalid, out-of-fuel) and a diagnostic
        naming the first offending judgment.
    """
    return _wrap_tool(
        lambda: check_payload(certificate, example, system_text, bounded, budget, base, graph_text)
    )


@mcp.tool()
def list_examples() -> dict:
    """List the built-in systems with their parameters and a sample goal."""
    return _wrap_tool(examples_payload)


def main(log_level: Optional[str] = None) -> None:
    """Console entry point: run the MCP server over stdio.

    This is the target of the ``regcoind-mcp`` console script. Package logs go
    to stderr at ``log_level`` or $REGCOIND_LOG_LEVEL; the banner is suppressed
    so nothing but JSON-RPC is written to stdout.
    """
    configure_logging(log_level)
    mcp.run(show_banner=False, log_level="WARNING")


# Entry point for running the server
if __name__ == "__main__":
    main()


__all__ = [name for name in globals() if not name.startswith("_")]
