"""Proof-graph certificates: unfolding into tree prefixes and text renderings."""
from __future__ import annotations

import json
from typing import Callable, Dict, FrozenSet, List

from .core import Judgment, ProofGraph, RuleInstance
from .search import FiniteTree

CERTIFICATE_FORMAT = "regcoind-certificate/1"
RENDER_FORMATS = ("graph-text", "structured-text")


def unfold(cert: ProofGraph, depth: int) -> FiniteTree:
    """Depth-``depth`` prefix of the proof tree the certificate denotes.

    Children follow the premises of each node's assigned rule, in judgment
    order. The caller is expected to have validated ``cert``.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative.")
    layers: Dict[Judgment, FiniteTree] = {}
    # Build bottom-up: level k holds the depth-k unfolding of every key.
    for level in range(depth + 1):
        previous = layers
        layers = {}
        for key in cert.keys():
            if level == 0:
                layers[key] = FiniteTree(key)
            else:
                premises = cert.assignment[key].sorted_premises()
                layers[key] = FiniteTree(key, tuple(previous[p] for p in premises))
    if cert.root not in layers:
        return FiniteTree(cert.root)
    return layers[cert.root]


def distinct_subtree_bound(cert: ProofGraph) -> int:
    """Upper bound on the distinct subtrees of the unfolded tree: one per key."""
    return len(cert.assignment)


def labels(tree: FiniteTree) -> FrozenSet[Judgment]:
    found = set()
    stack = [tree]
    while stack:
        node = stack.pop()
        found.add(node.root)
        stack.extend(node.children)
    return frozenset(found)


def _graph_text(cert: ProofGraph) -> str:
    keys = cert.keys()
    ids = {key: index for index, key in enumerate(keys)}
    lines = [f"node {ids[key]} {json.dumps(str(key), ensure_ascii=False)}" for key in keys]
    lines += [f"edge {ids[conclusion]} {ids[premise]}" for conclusion, premise in cert.edges()]
    return "\n".join(lines) + "\n"


def _structured_text(cert: ProofGraph) -> str:
    record = {
        "format": CERTIFICATE_FORMAT,
        "root": str(cert.root),
        "nodes": [
            {
                "judgment": str(key),
                "premises": [str(p) for p in cert.assignment[key].sorted_premises()],
            }
            for key in cert.keys()
        ],
    }
    return json.dumps(record, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render(cert: ProofGraph, fmt: str = "structured-text") -> str:
    """Render as ``graph-text`` (node/edge lines) or ``structured-text`` (JSON)."""
    if fmt == "graph-text":
        return _graph_text(cert)
    if fmt == "structured-text":
        return _structured_text(cert)
    raise ValueError(f"Unknown format {fmt!r}; expected one of {', '.join(RENDER_FORMATS)}.")


def parse_certificate(text: str, read_judgment: Callable[[str], Judgment]) -> ProofGraph:
    """Inverse of the structured-text rendering.

    ``read_judgment`` turns a rendering back into a judgment (for instance
    :func:`regcoind.syntax.parse_goal`). Malformed records raise ValueError.
    """
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"certificate is not JSON: {exc.msg} at line {exc.lineno}") from exc
    if not isinstance(record, dict) or record.get("format") != CERTIFICATE_FORMAT:
        raise ValueError(f"certificate must be a {CERTIFICATE_FORMAT} record.")
    try:
        root = read_judgment(record["root"])
        assignment: Dict[Judgment, RuleInstance] = {}
        for node in record["nodes"]:
            judgment = read_judgment(node["judgment"])
            if judgment in assignment:
                raise ValueError(f"{judgment} appears twice in the certificate.")
            premises: List[Judgment] = [read_judgment(p) for p in node["premises"]]
            assignment[judgment] = RuleInstance.of(premises, judgment)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"certificate record is missing or mistypes a field: {exc}") from exc
    return ProofGraph(root, {key: assignment[key] for key in sorted(assignment)})


__all__ = [name for name in globals() if not name.startswith("_")]
