"""Built-in inference systems over the lazy enumerator contract.

Each judgment renders in the CLI goal syntax, so renderings are injective and
can be parsed back. Meta-rules with infinitely many instances are finitized
per judgment as documented on each system.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from .core import GeneralizedSystem, InferenceSystem, RuleInstance
from .streams import MAX_BASE, Lasso, check_digits, elements, head, tail

INFINITY = math.inf
Delta = Union[int, float]

# Carries of the addition coaxiom; the addition rules never leave this window.
CARRY_WINDOW = range(-1, 3)

# Names accepted by --example and the MCP tools.
EXAMPLE_NAMES = ("allpos", "dist", "min", "add")


def format_delta(delta: Delta) -> str:
    return "inf" if delta == INFINITY else str(int(delta))


@dataclass(frozen=True, order=True)
class AllPos:
    """allpos s: every element of s is positive."""
    stream: Lasso

    def __str__(self) -> str:
        return f"allpos {self.stream}"


@dataclass(frozen=True, order=True)
class Dist:
    """dist v u δ: the distance from v to u in graph ``graph`` is δ."""
    source: str
    target: str
    delta: Delta
    graph: str = "G"

    def __post_init__(self) -> None:
        if self.delta != INFINITY and (not float(self.delta).is_integer() or self.delta < 0):
            raise ValueError(f"distance must be a natural number or inf, got {self.delta}.")
        if self.delta != INFINITY:
            object.__setattr__(self, "delta", int(self.delta))

    def __str__(self) -> str:
        return f"dist {self.source} {self.target} {format_delta(self.delta)}"


@dataclass(frozen=True, order=True)
class Min:
    """min z s: z is the minimum of s."""
    value: int
    stream: Lasso

    def __str__(self) -> str:
        return f"min {self.value} {self.stream}"


@dataclass(frozen=True, order=True)
class Add:
    """add r1 r2 r c: value(r1) + value(r2) = value(r) + c for base-``base`` digit streams."""
    first: Lasso
    second: Lasso
    total: Lasso
    carry: int
    base: int = 10

    def __post_init__(self) -> None:
        if not 2 <= self.base <= MAX_BASE:
            raise ValueError(f"base must be in 2..{MAX_BASE}, got {self.base}.")
        for stream in (self.first, self.second, self.total):
            check_digits(stream, self.base)

    def __str__(self) -> str:
        return f"add {self.first} {self.second} {self.total} {self.carry}"


@dataclass(frozen=True)
class Graph:
    """A finite graph given by its successor function."""
    nodes: Tuple[str, ...]
    adjacency: Tuple[Tuple[str, Tuple[str, ...]], ...]

    def __post_init__(self) -> None:
        known = set(self.nodes)
        for node, successors in self.adjacency:
            stray = [s for s in (node, *successors) if s not in known]
            if stray:
                raise ValueError(f"edge from {node} mentions unknown node {stray[0]}.")

    @classmethod
    def from_mapping(cls, successors: Mapping[str, Iterable[str]], nodes: Iterable[str] = ()) -> "Graph":
        """Graph whose node set is ``nodes`` plus every node an edge mentions."""
        edges = {node: tuple(sorted(set(succ))) for node, succ in successors.items()}
        every = set(nodes) | set(edges)
        for succ in edges.values():
            every |= set(succ)
        return cls(tuple(sorted(every)), tuple(sorted(edges.items())))

    def successors(self, node: str) -> Tuple[str, ...]:
        return dict(self.adjacency).get(node, ())

    def __len__(self) -> int:
        return len(self.nodes)


def sample_graph() -> Graph:
    """The four-node running example: a→b, a→d, b→a, b→c, d→d; c is a sink."""
    return Graph.from_mapping({"a": ["b", "d"], "b": ["a", "c"], "c": [], "d": ["d"]})


def distance_candidates(g: Graph) -> List[Delta]:
    """{0..|V|-1} ∪ {inf}: a shortest path never repeats a node."""
    return list(range(len(g))) + [INFINITY]


def allpos_system() -> InferenceSystem:
    """allpos (x:s) from allpos s, provided x > 0."""

    def _rules(judgment: AllPos) -> List[RuleInstance]:
        if head(judgment.stream) <= 0:
            return []
        return [RuleInstance.of([AllPos(tail(judgment.stream))], judgment)]

    return InferenceSystem(_rules, name="allpos")


def dist_system(g: Graph, graph_id: str = "G") -> InferenceSystem:
    """dist v v 0 as an axiom; dist v u (1 + min δi) from dist vi u δi over the successors vi.

    Premise distances range over :func:`distance_candidates`; with no
    successors the adj rule is an axiom concluding inf.
    """
    candidates = distance_candidates(g)
    successors: Dict[str, Tuple[str, ...]] = {node: g.successors(node) for node in g.nodes}

    @lru_cache(maxsize=None)
    def _rules(judgment: Dist) -> Tuple[RuleInstance, ...]:
        if judgment.graph != graph_id or judgment.source not in successors:
            return ()
        if judgment.source == judgment.target:
            return (RuleInstance.of((), judgment),) if judgment.delta == 0 else ()
        neighbours = successors[judgment.source]
        rules = []
        for deltas in itertools.product(candidates, repeat=len(neighbours)):
            if 1 + min(deltas, default=INFINITY) != judgment.delta:
                continue
            premises = [Dist(v, judgment.target, d, graph_id) for v, d in zip(neighbours, deltas)]
            rules.append(RuleInstance.of(premises, judgment))
        return tuple(rules)

    return InferenceSystem(_rules, name=f"dist[{graph_id}]")


def _min_rules(judgment: Min) -> List[RuleInstance]:
    first, rest = head(judgment.stream), tail(judgment.stream)
    z = judgment.value
    if min(first, z) != z:
        return []
    # y = z alone misses bounded derivations such as min 3 3|5, which needs y = 5 at the cycle.
    candidates = {z} | {e for e in elements(rest) if min(first, e) == z}
    return [RuleInstance.of([Min(y, rest)], judgment) for y in sorted(candidates)]


def _min_coaxioms(judgment: Min) -> List[RuleInstance]:
    if judgment.value == head(judgment.stream):
        return [RuleInstance.of((), judgment)]
    return []


def min_system(with_coaxiom: bool = False) -> Union[InferenceSystem, GeneralizedSystem]:
    """min z (x:s) from min y s when z = min{x, y}; the coaxiom is min x (x:s)."""
    rules = InferenceSystem(_min_rules, name="min")
    if not with_coaxiom:
        return rules
    return GeneralizedSystem(rules, InferenceSystem(_min_coaxioms, name="min-coaxiom"))


def add_system(base: int) -> GeneralizedSystem:
    """Digit-stream addition with the carry coaxiom.

    add (d1:r1) (d2:r2) (x mod b : r) (x div b) from add r1 r2 r c with
    x = d1 + d2 + c. The conclusion fixes c = b·c_out + d − d1 − d2, so each
    judgment has at most one rule. It is emitted only when c lies in
    CARRY_WINDOW: outside it carries grow geometrically and no regular
    derivation, with or without the coaxiom, can pass through them.
    """
    if not 2 <= base <= MAX_BASE:
        raise ValueError(f"base must be in 2..{MAX_BASE}, got {base}.")

    def _rules(judgment: Add) -> List[RuleInstance]:
        if judgment.base != base:
            return []
        carry = base * judgment.carry + head(judgment.total) - head(judgment.first) - head(judgment.second)
        if carry not in CARRY_WINDOW:
            return []
        premise = Add(tail(judgment.first), tail(judgment.second), tail(judgment.total), carry, base)
        return [RuleInstance.of([premise], judgment)]

    def _coaxioms(judgment: Add) -> List[RuleInstance]:
        if judgment.base == base and judgment.carry in CARRY_WINDOW:
            return [RuleInstance.of((), judgment)]
        return []

    return GeneralizedSystem(
        InferenceSystem(_rules, name=f"add[{base}]"),
        InferenceSystem(_coaxioms, name=f"add[{base}]-coaxiom"),
    )


def shortest_distance(g: Graph, source: str, target: str) -> Delta:
    """Breadth-first-search distance, inf when unreachable."""
    frontier = deque([(source, 0)])
    seen = {source}
    while frontier:
        node, steps = frontier.popleft()
        if node == target:
            return steps
        for succ in g.successors(node):
            if succ not in seen:
                seen.add(succ)
                frontier.append((succ, steps + 1))
    return INFINITY


def stream_minimum(stream: Lasso) -> int:
    return min(elements(stream))


def random_graph(seed: int, max_nodes: int, edge_probability: float = 0.35) -> Graph:
    """Deterministic random graph on 1..max_nodes nodes named n0, n1, ..."""
    if max_nodes < 1:
        raise ValueError("max_nodes must be at least 1.")
    rng = random.Random(seed)
    nodes = [f"n{i}" for i in range(rng.randint(1, max_nodes))]
    edges = {v: [u for u in nodes if rng.random() < edge_probability] for v in nodes}
    return Graph.from_mapping(edges, nodes)


__all__ = [name for name in globals() if not name.startswith("_")]
