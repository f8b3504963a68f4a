"""Explicit finite inference systems and brute-force fixed-point oracles.

These are the ground truth for property tests: the inference operator,
least and greatest fixed points by iteration, the rational fixed point as the
union of all post-fixed subsets, and the regular interpretation with corules.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import cached_property
from typing import AbstractSet, FrozenSet, Iterable, Optional, Sequence, Tuple

from .core import GeneralizedSystem, InferenceSystem, Judgment, RuleInstance, ground_rules

logger = logging.getLogger(__name__)

# rfp_bruteforce enumerates every subset of the universe.
MAX_ORACLE_UNIVERSE = 16

# Premise sets drawn by the random generator have at most this many judgments.
MAX_RANDOM_PREMISES = 3


class GroundSystemError(ValueError):
    """A ground system violates its invariants; ``rule_index`` names the rule."""

    def __init__(self, message: str, rule_index: Optional[int] = None) -> None:
        super().__init__(message)
        self.rule_index = rule_index


@dataclass(frozen=True)
class GroundSystem:
    """Every rule listed explicitly over a finite universe."""
    universe: FrozenSet[Judgment]
    rules: Tuple[RuleInstance, ...]

    def __post_init__(self) -> None:
        for index, rule in enumerate(self.rules):
            stray = sorted((rule.premises | {rule.conclusion}) - self.universe)
            if stray:
                raise GroundSystemError(f"rule {index} ({rule}) mentions {stray[0]} outside the universe", index)

    @classmethod
    def from_rules(cls, rules: Iterable[RuleInstance], universe: Iterable[Judgment] = ()) -> "GroundSystem":
        """Universe = the given judgments plus every judgment the rules mention."""
        listed = tuple(rules)
        mentioned = set(universe)
        for rule in listed:
            mentioned |= rule.premises
            mentioned.add(rule.conclusion)
        return cls(frozenset(mentioned), listed)

    @cached_property
    def system(self) -> InferenceSystem:
        return ground_rules(self.rules)

    def restrict(self, keep: AbstractSet[Judgment]) -> "GroundSystem":
        """Same universe, keeping only rules whose conclusion is in ``keep``."""
        return GroundSystem(self.universe, tuple(r for r in self.rules if r.conclusion in keep))


@dataclass(frozen=True)
class GroundPair:
    """A ground system with ground corules over the same universe."""
    rules: GroundSystem
    corules: GroundSystem

    def __post_init__(self) -> None:
        if self.rules.universe != self.corules.universe:
            raise ValueError("rules and corules must share one universe.")

    @property
    def universe(self) -> FrozenSet[Judgment]:
        return self.rules.universe

    def generalized(self) -> GeneralizedSystem:
        return GeneralizedSystem(self.rules.system, self.corules.system)


def pair_from_rules(rules: Sequence[RuleInstance], corules: Sequence[RuleInstance]) -> GroundPair:
    """GroundPair whose shared universe is everything either list mentions."""
    universe = GroundSystem.from_rules(tuple(rules) + tuple(corules)).universe
    return GroundPair(GroundSystem.from_rules(rules, universe), GroundSystem.from_rules(corules, universe))


def all_axioms(universe: Iterable[Judgment]) -> GroundSystem:
    """One axiom ⟨∅, j⟩ per judgment."""
    judgments = sorted(set(universe))
    return GroundSystem(frozenset(judgments), tuple(RuleInstance.of((), j) for j in judgments))


def inf_op(g: GroundSystem, x: AbstractSet[Judgment]) -> FrozenSet[Judgment]:
    """F_I(x): conclusions of rules whose premises all lie in ``x``."""
    if not x <= g.universe:
        stray = sorted(set(x) - g.universe)
        raise ValueError(f"{stray[0]} is not in the universe.")
    return frozenset(rule.conclusion for rule in g.rules if rule.premises <= x)


def lfp(g: GroundSystem) -> FrozenSet[Judgment]:
    """Least fixed point by Kleene iteration from the empty set."""
    current: FrozenSet[Judgment] = frozenset()
    while True:
        following = inf_op(g, current)
        if following == current:
            return current
        current = following


def gfp(g: GroundSystem) -> FrozenSet[Judgment]:
    """Greatest fixed point by iteration downward from the universe."""
    current = g.universe
    while True:
        following = inf_op(g, current) & current
        if following == current:
            return current
        current = following


def _check_oracle_size(g: GroundSystem) -> None:
    if len(g.universe) > MAX_ORACLE_UNIVERSE:
        raise ValueError(
            f"universe has {len(g.universe)} judgments; the subset oracle is capped at {MAX_ORACLE_UNIVERSE}."
        )


def rfp_bruteforce(g: GroundSystem) -> FrozenSet[Judgment]:
    """Union of all post-fixed subsets; asserted equal to gfp on the finite lattice."""
    _check_oracle_size(g)
    atoms = sorted(g.universe)
    result = set()
    for mask in range(1 << len(atoms)):
        subset = frozenset(atom for bit, atom in enumerate(atoms) if mask >> bit & 1)
        if subset <= inf_op(g, subset):
            result |= subset
    rational = frozenset(result)
    greatest = gfp(g)
    if rational != greatest:
        raise RuntimeError(f"rational fixed point {sorted(rational)} differs from gfp {sorted(greatest)}")
    return rational


def flex_regular_bruteforce(gi: GroundSystem, gco: GroundSystem) -> FrozenSet[Judgment]:
    """Regular interpretation of ⟨gi, gco⟩: rfp of gi restricted to lfp(gi ∪ gco)."""
    if gi.universe != gco.universe:
        raise ValueError("rules and corules must share one universe.")
    bound = lfp(GroundSystem(gi.universe, gi.rules + gco.rules))
    return rfp_bruteforce(gi.restrict(bound))


def random_ground_system(
    seed: int,
    max_universe: int,
    max_rules: int,
    universe: Optional[Iterable[Judgment]] = None,
) -> GroundSystem:
    """Deterministic random system over atoms ``j0..jn``.

    Passing ``universe`` draws rules over that universe instead, which is how
    random corules for an existing system are made.
    """
    if max_universe < 1:
        raise ValueError("max_universe must be at least 1.")
    rng = random.Random(seed)
    if universe is None:
        atoms = [f"j{i}" for i in range(rng.randint(1, max_universe))]
    else:
        atoms = sorted(set(universe))
    rules = []
    for _ in range(rng.randint(0, max(0, max_rules))):
        size = rng.randint(0, min(MAX_RANDOM_PREMISES, len(atoms)))
        rules.append(RuleInstance.of(rng.sample(atoms, size), rng.choice(atoms)))
    # Duplicate draws collapse: a rule set has no multiplicity.
    unique = tuple(dict.fromkeys(rules))
    logger.debug("random system seed=%s: %d atoms, %d rules", seed, len(atoms), len(unique))
    return GroundSystem(frozenset(atoms), unique)


__all__ = [name for name in globals() if not name.startswith("_")]
