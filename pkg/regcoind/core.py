"""Judgments, rules, inference-system contracts and proof-graph certificates.

Every other module builds on the types defined here. Systems are backward
rule enumerators: given a judgment they return the finite list of rules
concluding it. Certificates of regular derivability are finite proof graphs
(one chosen rule per judgment) checked by :func:`validate_proof_graph` and,
for systems with corules, :func:`validate_bounded_proof_graph`.
"""
from __future__ import annotations

import enum
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

# Judgments are opaque: any hashable, totally ordered value with a stable str().
Judgment = Any

# Environment variables read by the settings holder.
BUDGET_ENV = "REGCOIND_BUDGET"
LOG_LEVEL_ENV = "REGCOIND_LOG_LEVEL"

# Default number of rule applications a query may try.
DEFAULT_BUDGET = 10000
DEFAULT_LOG_LEVEL = "WARNING"

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"

logger = logging.getLogger(__name__)


class _Settings:  # pylint: disable=too-few-public-methods
    """Internal holder for runtime overrides of the configurable defaults."""

    __slots__ = ("_budget",)

    def __init__(self) -> None:
        self._budget: Optional[int] = None

    @property
    def budget(self) -> int:
        """Runtime override, else the environment, else DEFAULT_BUDGET."""
        if self._budget is not None:
            return self._budget
        raw = os.getenv(BUDGET_ENV)
        if not raw:
            return DEFAULT_BUDGET
        try:
            value = int(raw)
        except ValueError:
            logger.warning("Ignoring %s=%r: not an integer", BUDGET_ENV, raw)
            return DEFAULT_BUDGET
        if value <= 0:
            logger.warning("Ignoring %s=%r: budget must be positive", BUDGET_ENV, raw)
            return DEFAULT_BUDGET
        return value

    @budget.setter
    def budget(self, value: Optional[int]) -> None:
        self._budget = value


_settings = _Settings()


def get_default_budget() -> int:
    """Budget used when a query does not name one."""
    return _settings.budget


def set_default_budget(budget: Optional[int]) -> None:
    """Override the default budget for this process; None restores the fallback chain."""
    if budget is not None:
        require_budget(budget)
    _settings.budget = budget


def configure_logging(level: Optional[str] = None) -> None:
    """Attach a single stderr handler to the package logger.

    The level comes from ``level``, else REGCOIND_LOG_LEVEL, else WARNING.
    Calling this again only adjusts the level.
    """
    name = (level or os.getenv(LOG_LEVEL_ENV) or DEFAULT_LOG_LEVEL).upper()
    resolved = logging.getLevelName(name)
    package_logger = logging.getLogger("regcoind")
    if not isinstance(resolved, int):
        package_logger.warning("Unknown log level %r; using %s", name, DEFAULT_LOG_LEVEL)
        resolved = logging.getLevelName(DEFAULT_LOG_LEVEL)
    package_logger.setLevel(resolved)
    if not any(getattr(h, "_regcoind", False) for h in package_logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._regcoind = True  # type: ignore[attr-defined]  # pylint: disable=protected-access
        package_logger.addHandler(handler)


def require_budget(budget: int) -> int:
    """Reject non-positive or non-integer budgets."""
    if isinstance(budget, bool) or not isinstance(budget, int):
        raise ValueError("budget must be an integer.")
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}.")
    return budget


@dataclass(frozen=True)
class RuleInstance:
    """A rule ⟨premises, conclusion⟩ with a finite premise set."""
    premises: FrozenSet[Judgment]
    conclusion: Judgment

    @classmethod
    def of(cls, premises: Iterable[Judgment], conclusion: Judgment) -> "RuleInstance":
        return cls(frozenset(premises), conclusion)

    def sorted_premises(self) -> List[Judgment]:
        """Premises in the total order of judgments."""
        return sorted(self.premises)

    def __str__(self) -> str:
        inner = ", ".join(str(p) for p in self.sorted_premises())
        return f"[{inner}] => {self.conclusion}"


Enumerator = Callable[[Judgment], Iterable[RuleInstance]]


class InferenceSystem:
    """A backward rule enumerator.

    ``rules_for(j)`` returns the rules whose conclusion is ``j``, in
    enumerator order, duplicates removed. Enumerators must be pure.
    """

    __slots__ = ("_enumerate", "name")

    def __init__(self, enumerate_rules: Enumerator, name: str = "system") -> None:
        self._enumerate = enumerate_rules
        self.name = name

    def rules_for(self, judgment: Judgment) -> Tuple[RuleInstance, ...]:
        rules: Dict[RuleInstance, None] = {}
        for rule in self._enumerate(judgment):
            if rule.conclusion != judgment:
                raise ValueError(
                    f"{self.name}: enumerator emitted {rule} when queried at {judgment}."
                )
            rules.setdefault(rule, None)
        return tuple(rules)

    def __repr__(self) -> str:
        return f"InferenceSystem({self.name!r})"


EMPTY_SYSTEM = InferenceSystem(lambda _judgment: (), name="empty")


def union_system(rules: InferenceSystem, corules: InferenceSystem) -> InferenceSystem:
    """I ∪ CO: rules of ``rules`` first, then those of ``corules``, duplicates dropped."""

    def _enumerate(judgment: Judgment) -> Tuple[RuleInstance, ...]:
        return rules.rules_for(judgment) + corules.rules_for(judgment)

    return InferenceSystem(_enumerate, name=f"{rules.name} ∪ {corules.name}")


@dataclass(frozen=True)
class GeneralizedSystem:
    """An inference system with corules ⟨I, CO⟩."""
    rules: InferenceSystem
    corules: InferenceSystem = EMPTY_SYSTEM

    def union(self) -> InferenceSystem:
        return union_system(self.rules, self.corules)


@dataclass(frozen=True, eq=True)
class ProofGraph:
    """Finite post-fixed set with one witnessing rule per judgment."""
    root: Judgment
    assignment: Mapping[Judgment, RuleInstance] = field(default_factory=dict)

    __hash__ = None  # type: ignore[assignment]

    def keys(self) -> List[Judgment]:
        """Judgments of the graph in total order."""
        return sorted(self.assignment)

    def edges(self) -> List[Tuple[Judgment, Judgment]]:
        """(conclusion, premise) pairs, ordered by conclusion then premise."""
        return [(key, premise) for key in self.keys() for premise in self.assignment[key].sorted_premises()]


class Verdict(enum.Enum):
    VALID = "valid"
    INVALID = "invalid"
    OUT_OF_FUEL = "out-of-fuel"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a certificate check; truthy only when VALID."""
    verdict: Verdict
    diagnostic: Optional[str] = None

    def __bool__(self) -> bool:
        return self.verdict is Verdict.VALID


class FuelExhausted(Exception):
    """Raised inside a search when the budget runs out."""


class Fuel:
    """Counts rule applications against a fixed budget."""

    __slots__ = ("budget", "used")

    def __init__(self, budget: int) -> None:
        self.budget = require_budget(budget)
        self.used = 0

    def spend(self) -> None:
        if self.used >= self.budget:
            raise FuelExhausted(self.used)
        self.used += 1


def _reachable(cert: ProofGraph) -> set:
    seen = {cert.root}
    stack = [cert.root]
    while stack:
        rule = cert.assignment.get(stack.pop())
        if rule is None:
            continue
        for premise in rule.premises:
            if premise not in seen:
                seen.add(premise)
                stack.append(premise)
    return seen


def _invalid(message: str) -> CheckResult:
    logger.debug("certificate rejected: %s", message)
    return CheckResult(Verdict.INVALID, message)


def validate_proof_graph(system: InferenceSystem, cert: ProofGraph) -> CheckResult:
    """Regular coinduction as a check: keys finite, closed under premises, rules in the system.

    Diagnostics name the first offending judgment in total order.
    """
    if cert.root not in cert.assignment:
        return _invalid(f"root {cert.root} has no assigned rule")
    for key in cert.keys():
        rule = cert.assignment[key]
        if rule.conclusion != key:
            return _invalid(f"{key} is assigned a rule concluding {rule.conclusion}")
        missing = [p for p in rule.sorted_premises() if p not in cert.assignment]
        if missing:
            return _invalid(f"premise {missing[0]} of {key} is not a node of the graph")
        if rule not in system.rules_for(key):
            return _invalid(f"rule {rule} assigned to {key} is not a rule of {system.name}")
    reachable = _reachable(cert)
    unreachable = [key for key in cert.keys() if key not in reachable]
    if unreachable:
        return _invalid(f"{unreachable[0]} is not reachable from root {cert.root}")
    return CheckResult(Verdict.VALID)


def validate_bounded_proof_graph(gen: GeneralizedSystem, cert: ProofGraph, budget: int) -> CheckResult:
    """Bounded regular coinduction: structural check plus X ⊆ Ind⟦I ∪ CO⟧.

    Every node must have a finite proof in the union system; the inductive
    checks share one budget.
    """
    require_budget(budget)
    structural = validate_proof_graph(gen.rules, cert)
    if not structural:
        return structural

    from .search import InductiveProver  # pylint: disable=import-outside-toplevel

    prover = InductiveProver(gen.union(), Fuel(budget))
    try:
        for key in cert.keys():
            if prover.prove(key) is None:
                return _invalid(f"{key} has no finite proof using the corules")
    except FuelExhausted:
        return CheckResult(Verdict.OUT_OF_FUEL, f"budget of {budget} exhausted during boundedness checks")
    return CheckResult(Verdict.VALID)


def ground_rules(rules: Sequence[RuleInstance], name: str = "ground") -> InferenceSystem:
    """Enumerator over an explicit rule list, filtering on conclusion."""
    index: Dict[Judgment, List[RuleInstance]] = {}
    for rule in rules:
        index.setdefault(rule.conclusion, []).append(rule)
    return InferenceSystem(lambda judgment: index.get(judgment, ()), name=name)


# Public exports (include _settings for test access)
__all__ = [name for name in globals() if not name.startswith("_")]
__all__.append("_settings")
