"""Unit tests for ground systems and the fixed-point oracles."""
# pylint: disable=missing-function-docstring

import random
import unittest

from regcoind.core import RuleInstance
from regcoind.ground import (
    MAX_ORACLE_UNIVERSE,
    GroundPair,
    GroundSystem,
    GroundSystemError,
    all_axioms,
    flex_regular_bruteforce,
    gfp,
    inf_op,
    lfp,
    pair_from_rules,
    random_ground_system,
    rfp_bruteforce,
)


def _system(*rules):
    return GroundSystem.from_rules([RuleInstance.of(premises, conclusion) for premises, conclusion in rules])


class GroundSystemTests(unittest.TestCase):
    """Construction and invariants."""
    def test_universe_contains_every_mentioned_judgment(self):
        system = _system(([], "a"), (["c"], "b"))
        self.assertEqual(system.universe, frozenset({"a", "b", "c"}))

    def test_rule_outside_universe_reports_index(self):
        with self.assertRaises(GroundSystemError) as ctx:
            GroundSystem(frozenset({"a"}), (RuleInstance.of([], "a"), RuleInstance.of(["b"], "a")))
        self.assertEqual(ctx.exception.rule_index, 1)

    def test_pair_shares_universe(self):
        pair = pair_from_rules([RuleInstance.of(["a"], "a")], [RuleInstance.of([], "b")])
        self.assertEqual(pair.rules.universe, frozenset({"a", "b"}))
        self.assertEqual(pair.universe, pair.corules.universe)
        with self.assertRaises(ValueError):
            GroundPair(_system(([], "a")), _system(([], "b")))

    def test_random_systems_are_deterministic(self):
        first = random_ground_system(7, 6, 12)
        self.assertEqual(first, random_ground_system(7, 6, 12))
        self.assertLessEqual(len(first.universe), 6)
        self.assertLessEqual(len(first.rules), 12)
        corules = random_ground_system(8, 6, 4, universe=first.universe)
        self.assertEqual(corules.universe, first.universe)


class OracleTests(unittest.TestCase):
    """Least, greatest, rational and corule-bounded fixed points."""
    def test_inference_operator(self):
        system = _system(([], "a"), (["a"], "b"), (["a", "b"], "c"))
        self.assertEqual(inf_op(system, frozenset()), frozenset({"a"}))
        self.assertEqual(inf_op(system, frozenset({"a"})), frozenset({"a", "b"}))
        with self.assertRaises(ValueError):
            inf_op(system, frozenset({"zzz"}))

    def test_self_loop(self):
        system = _system((["a"], "a"))
        self.assertEqual(lfp(system), frozenset())
        self.assertEqual(gfp(system), frozenset({"a"}))
        self.assertEqual(rfp_bruteforce(system), frozenset({"a"}))

    def test_axiom(self):
        system = _system(([], "a"))
        self.assertEqual(lfp(system), gfp(system))
        self.assertEqual(rfp_bruteforce(system), frozenset({"a"}))

    def test_flex_regular_particular_cases(self):
        system = _system((["a"], "a"), (["b"], "c"), ([], "b"))
        empty = GroundSystem(system.universe, ())
        self.assertEqual(flex_regular_bruteforce(system, empty), lfp(system))
        self.assertEqual(flex_regular_bruteforce(system, all_axioms(system.universe)), rfp_bruteforce(system))

    def test_flex_regular_needs_matching_universe(self):
        with self.assertRaises(ValueError):
            flex_regular_bruteforce(_system(([], "a")), _system(([], "b")))

    def test_oracle_cap(self):
        atoms = [f"j{i}" for i in range(MAX_ORACLE_UNIVERSE + 1)]
        with self.assertRaises(ValueError):
            rfp_bruteforce(all_axioms(atoms))


class FixedPointPropertyTests(unittest.TestCase):
    """Lattice laws of the oracles over random systems."""
    SEEDS = range(300)

    def test_inference_operator_is_monotone(self):
        rng = random.Random(17)
        for seed in self.SEEDS:
            system = random_ground_system(seed, 6, 12)
            atoms = sorted(system.universe)
            for _ in range(5):
                smaller = frozenset(a for a in atoms if rng.random() < 0.4)
                larger = smaller | frozenset(a for a in atoms if rng.random() < 0.4)
                self.assertLessEqual(inf_op(system, smaller), inf_op(system, larger), seed)

    def test_least_and_greatest_are_fixed_points(self):
        for seed in self.SEEDS:
            system = random_ground_system(seed, 6, 12)
            least, greatest = lfp(system), gfp(system)
            self.assertEqual(inf_op(system, least), least, seed)
            self.assertEqual(inf_op(system, greatest), greatest, seed)
            self.assertTrue(least <= rfp_bruteforce(system) <= greatest, seed)

    def test_flex_regular_is_fixed_point_of_rules(self):
        for seed in self.SEEDS:
            rules = random_ground_system(seed, 6, 12)
            corules = random_ground_system(10 ** 6 + seed, 6, 4, universe=rules.universe)
            flex = flex_regular_bruteforce(rules, corules)
            self.assertEqual(inf_op(rules, flex), flex, seed)
            self.assertTrue(lfp(rules) <= flex <= rfp_bruteforce(rules), seed)


if __name__ == "__main__":
    unittest.main()
