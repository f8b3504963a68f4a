"""Proof search: regular (cyclic) search, its corule-bounded variant, and inductive search.

Regular search decides sequents ``H ; j`` where ``H`` is the finite set of
circular hypotheses. A judgment already in ``H`` closes its branch; any other
judgment is unfolded by trying its rules in enumerator order, recursing on
the premises (in judgment order) under ``H ∪ {j}``.

The corule-bounded variant accepts a circular hypothesis only when the
judgment also has a finite proof in ``I ∪ CO``; when that check fails the
judgment may still be unfolded.

Inductive search looks for a finite proof tree, pruning a branch when a
judgment repeats on its own root path.

All searches spend one unit of fuel per rule application tried and share it
with any nested boundedness checks.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from .core import (
    Fuel,
    FuelExhausted,
    GeneralizedSystem,
    InferenceSystem,
    Judgment,
    ProofGraph,
    RuleInstance,
    require_budget,
)

logger = logging.getLogger(__name__)

Hypotheses = FrozenSet[Judgment]
Step = Tuple[Judgment, RuleInstance]
_State = Tuple[Hypotheses, Judgment]


@dataclass(frozen=True, order=True)
class FiniteTree:
    """A finite tree of judgments; sibling roots are pairwise distinct."""
    root: Judgment
    children: Tuple["FiniteTree", ...] = ()

    def __post_init__(self) -> None:
        roots = [child.root for child in self.children]
        if len(set(roots)) != len(roots):
            raise ValueError(f"sibling nodes under {self.root} share a label")

    def walk(self) -> Iterator[Tuple["FiniteTree", int]]:
        """Pre-order (node, level) pairs, children left to right."""
        stack: List[Tuple[FiniteTree, int]] = [(self, 0)]
        while stack:
            node, level = stack.pop()
            yield node, level
            stack.extend((child, level + 1) for child in reversed(node.children))

    def depth(self) -> int:
        return max(level for _, level in self.walk())

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def pretty(self, indent: str = "  ") -> str:
        """Indented multi-line rendering, one node per line."""
        return "\n".join(f"{indent * level}{node.root}" for node, level in self.walk())


def truncate(tree: FiniteTree, depth: int) -> FiniteTree:
    """Prefix of ``tree`` up to ``depth`` edges from the root."""
    if depth < 0:
        raise ValueError("depth must be non-negative.")
    order = []
    for node, level in tree.walk():
        if level <= depth:
            order.append((node, level))
    # Subtrees may be shared, so rebuilt nodes are keyed by identity and level.
    built: Dict[Tuple[int, int], FiniteTree] = {}
    for node, level in reversed(order):
        children = () if level == depth else tuple(built[id(child), level + 1] for child in node.children)
        built[id(node), level] = FiniteTree(node.root, children)
    return built[id(tree), 0]


def validate_finite_tree(system: InferenceSystem, tree: FiniteTree) -> bool:
    """True iff every node with its children's roots instantiates a rule of ``system``."""
    stack = [tree]
    while stack:
        node = stack.pop()
        rule = RuleInstance.of((child.root for child in node.children), node.root)
        if rule not in system.rules_for(node.root):
            logger.debug("finite tree rejected at %s", node.root)
            return False
        stack.extend(node.children)
    return True


class Status(enum.Enum):
    PROVED = "PROVED"
    REFUTED = "REFUTED"
    OUT_OF_FUEL = "OUT-OF-FUEL"


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a search.

    ``certificate`` is a ProofGraph for regular searches and a FiniteTree for
    inductive search. A regular search started with hypotheses carries a
    certificate only when none of them was used.
    """
    status: Status
    fuel_used: int
    certificate: Optional[Union[ProofGraph, FiniteTree]] = None
    hypotheses_used: Hypotheses = frozenset()

    @property
    def proved(self) -> bool:
        return self.status is Status.PROVED

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED


@dataclass(frozen=True)
class MemoEntry:
    """A recorded success for ``judgment``, reusable under any H ⊇ used_hypotheses."""
    judgment: Judgment
    used_hypotheses: Hypotheses
    steps: Tuple[Step, ...]


@dataclass
class _Attempt:
    success: bool
    used: Set[Judgment] = field(default_factory=set)
    steps: List[Step] = field(default_factory=list)
    blocked: Set[_State] = field(default_factory=set)


@dataclass
class _ProofFrame:
    judgment: Judgment
    rules: Iterator[RuleInstance]
    premises: Optional[List[Judgment]] = None
    index: int = 0
    children: List[FiniteTree] = field(default_factory=list)
    blocked: Set[Judgment] = field(default_factory=set)


_ProofResult = Tuple[Optional[FiniteTree], Set[Judgment]]


class InductiveProver:
    """Depth-first search for finite proof trees with path-repetition pruning.

    Proved judgments are remembered with their tree; failures are remembered
    only when they did not depend on pruning against an ancestor. The search
    keeps its own stack, so proof depth is bounded by fuel alone.
    """

    def __init__(self, system: InferenceSystem, fuel: Fuel) -> None:
        self._system = system
        self._fuel = fuel
        self._proved: Dict[Judgment, FiniteTree] = {}
        self._refuted: Set[Judgment] = set()
        self._path: Set[Judgment] = set()

    def prove(self, goal: Judgment) -> Optional[FiniteTree]:
        """A finite proof tree for ``goal`` or None; raises FuelExhausted."""
        tree, _ = self._solve(goal)
        return tree

    def _enter(self, judgment: Judgment, stack: List[_ProofFrame]) -> Optional[_ProofResult]:
        if judgment in self._proved:
            return self._proved[judgment], set()
        if judgment in self._refuted:
            return None, set()
        if judgment in self._path:
            return None, {judgment}
        self._path.add(judgment)
        stack.append(_ProofFrame(judgment, iter(self._system.rules_for(judgment))))
        return None

    def _leave(self, frame: _ProofFrame) -> _ProofResult:
        self._path.discard(frame.judgment)
        if frame.premises is not None:
            tree = FiniteTree(frame.judgment, tuple(frame.children))
            self._proved[frame.judgment] = tree
            return tree, set()
        frame.blocked.discard(frame.judgment)
        if not frame.blocked:
            self._refuted.add(frame.judgment)
        return None, frame.blocked

    def _solve(self, goal: Judgment) -> _ProofResult:
        stack: List[_ProofFrame] = []
        result = self._enter(goal, stack)
        try:
            while stack:
                frame = stack[-1]
                if result is not None:
                    tree, blocked = result
                    result = None
                    frame.blocked |= blocked
                    if tree is None:
                        frame.premises = None
                    else:
                        frame.children.append(tree)
                        frame.index += 1
                if frame.premises is not None and frame.index < len(frame.premises):
                    result = self._enter(frame.premises[frame.index], stack)
                    continue
                if frame.premises is None:
                    rule = next(frame.rules, None)
                    if rule is not None:
                        self._fuel.spend()
                        frame.premises, frame.index, frame.children = rule.sorted_premises(), 0, []
                        continue
                stack.pop()
                result = self._leave(frame)
        finally:
            for frame in stack:
                self._path.discard(frame.judgment)
        assert result is not None
        return result


@dataclass
class _LoopFrame:
    state: _State
    extended: Hypotheses
    rules: Iterator[RuleInstance]
    premises: Optional[List[Judgment]] = None
    index: int = 0
    used: Set[Judgment] = field(default_factory=set)
    steps: List[Step] = field(default_factory=list)
    blocked: Set[_State] = field(default_factory=set)


class LoopSearch:
    """Cyclic proof search over ``H ; j`` sequents with memoization.

    With ``bounded`` set, closing a branch by circular hypothesis requires
    the hypothesis to have a finite proof in the union system checked by
    that prover.
    """

    def __init__(self, system: InferenceSystem, fuel: Fuel, bounded: Optional[InductiveProver] = None) -> None:
        self._system = system
        self._fuel = fuel
        self._bounded = bounded
        self._proved: Dict[Judgment, List[MemoEntry]] = {}
        self._refuted: Set[_State] = set()
        self._active: Set[_State] = set()
        self._bounded_cache: Dict[Judgment, bool] = {}

    @property
    def memo_sizes(self) -> Tuple[int, int]:
        return sum(len(v) for v in self._proved.values()), len(self._refuted)

    def solve(self, hypotheses: Hypotheses, goal: Judgment) -> Tuple[bool, Hypotheses, Tuple[Step, ...]]:
        """Decide ``hypotheses ; goal``: (accepted, hypotheses used, unfold steps of the run)."""
        attempt = self._solve(frozenset(hypotheses), goal)
        return attempt.success, frozenset(attempt.used), tuple(attempt.steps)

    def _hypothesis_closes(self, judgment: Judgment) -> bool:
        if self._bounded is None:
            return True
        if judgment not in self._bounded_cache:
            self._bounded_cache[judgment] = self._bounded.prove(judgment) is not None
        return self._bounded_cache[judgment]

    def _enter(self, hyps: Hypotheses, judgment: Judgment, stack: List[_LoopFrame]) -> Optional[_Attempt]:
        if judgment in hyps and self._hypothesis_closes(judgment):
            return _Attempt(True, used={judgment})

        state = (hyps, judgment)
        if state in self._active:
            return _Attempt(False, blocked={state})
        for entry in self._proved.get(judgment, ()):
            if entry.used_hypotheses <= hyps:
                return _Attempt(True, used=set(entry.used_hypotheses), steps=list(entry.steps))
        if state in self._refuted:
            return _Attempt(False)

        self._active.add(state)
        stack.append(_LoopFrame(state, hyps | {judgment}, iter(self._system.rules_for(judgment))))
        return None

    def _leave(self, frame: _LoopFrame) -> _Attempt:
        hyps, judgment = frame.state
        self._active.discard(frame.state)
        if frame.premises is not None:
            if judgment not in hyps:
                frame.used.discard(judgment)
            entry = MemoEntry(judgment, frozenset(frame.used), tuple(frame.steps))
            self._proved.setdefault(judgment, []).append(entry)
            return _Attempt(True, used=frame.used, steps=frame.steps)
        frame.blocked.discard(frame.state)
        if not frame.blocked:
            self._refuted.add(frame.state)
        return _Attempt(False, blocked=frame.blocked)

    def _solve(self, hyps: Hypotheses, goal: Judgment) -> _Attempt:
        stack: List[_LoopFrame] = []
        result = self._enter(hyps, goal, stack)
        try:
            while stack:
                frame = stack[-1]
                if result is not None:
                    frame.blocked |= result.blocked
                    if result.success:
                        frame.used |= result.used
                        frame.steps.extend(result.steps)
                        frame.index += 1
                    else:
                        frame.premises = None
                    result = None
                if frame.premises is not None and frame.index < len(frame.premises):
                    result = self._enter(frame.extended, frame.premises[frame.index], stack)
                    continue
                if frame.premises is None:
                    rule = next(frame.rules, None)
                    if rule is not None:
                        self._fuel.spend()
                        frame.premises, frame.index = rule.sorted_premises(), 0
                        frame.used, frame.steps = set(), [(frame.state[1], rule)]
                        continue
                stack.pop()
                result = self._leave(frame)
        finally:
            for frame in stack:
                self._active.discard(frame.state)
        assert result is not None
        return result


def extract_certificate(root: Judgment, steps: Sequence[Step]) -> ProofGraph:
    """Proof graph from the unfold steps of an accepting run.

    The first rule recorded for a judgment wins; nodes unreachable from the
    root are dropped.
    """
    chosen: Dict[Judgment, RuleInstance] = {}
    for judgment, rule in steps:
        chosen.setdefault(judgment, rule)

    assignment: Dict[Judgment, RuleInstance] = {}
    stack = [root]
    while stack:
        judgment = stack.pop()
        if judgment in assignment or judgment not in chosen:
            continue
        assignment[judgment] = chosen[judgment]
        stack.extend(chosen[judgment].sorted_premises())
    return ProofGraph(root, {key: assignment[key] for key in sorted(assignment)})


def _run_loop(
    search: LoopSearch,
    fuel: Fuel,
    goal: Judgment,
    hypotheses: Iterable[Judgment],
    label: str,
) -> SearchOutcome:
    try:
        accepted, used, steps = search.solve(frozenset(hypotheses), goal)
    except FuelExhausted:
        logger.debug("%s %s: out of fuel after %d", label, goal, fuel.used)
        return SearchOutcome(Status.OUT_OF_FUEL, fuel.used)

    logger.debug("%s %s: %s, fuel %d, memo %s", label, goal, accepted, fuel.used, search.memo_sizes)
    if not accepted:
        return SearchOutcome(Status.REFUTED, fuel.used)
    certificate = extract_certificate(goal, steps) if not used else None
    return SearchOutcome(Status.PROVED, fuel.used, certificate, used)


def prove_regular(
    system: InferenceSystem,
    goal: Judgment,
    budget: int,
    hypotheses: Iterable[Judgment] = (),
) -> SearchOutcome:
    """Search for a regular derivation of ``goal``; PROVED carries a ProofGraph."""
    fuel = Fuel(require_budget(budget))
    return _run_loop(LoopSearch(system, fuel), fuel, goal, hypotheses, "regular")


def prove_regular_co(
    gen: GeneralizedSystem,
    goal: Judgment,
    budget: int,
    hypotheses: Iterable[Judgment] = (),
) -> SearchOutcome:
    """Regular search over ``gen.rules`` whose hypothesis closures must be bounded by ``gen.corules``."""
    fuel = Fuel(require_budget(budget))
    bounded = InductiveProver(gen.union(), fuel)
    return _run_loop(LoopSearch(gen.rules, fuel, bounded), fuel, goal, hypotheses, "regular-co")


def prove_inductive(system: InferenceSystem, goal: Judgment, budget: int) -> SearchOutcome:
    """Search for a finite proof tree of ``goal``; PROVED carries a FiniteTree."""
    fuel = Fuel(require_budget(budget))
    try:
        tree = InductiveProver(system, fuel).prove(goal)
    except FuelExhausted:
        logger.debug("inductive %s: out of fuel after %d", goal, fuel.used)
        return SearchOutcome(Status.OUT_OF_FUEL, fuel.used)
    logger.debug("inductive %s: %s, fuel %d", goal, tree is not None, fuel.used)
    if tree is None:
        return SearchOutcome(Status.REFUTED, fuel.used)
    return SearchOutcome(Status.PROVED, fuel.used, tree)


__all__ = [name for name in globals() if not name.startswith("_")]
