"""Unit tests for judgments, systems, settings and certificate checks."""
# pylint: disable=missing-function-docstring

import logging
import os
import unittest
from unittest.mock import patch

from regcoind import core
from regcoind.core import (
    EMPTY_SYSTEM,
    CheckResult,
    Fuel,
    FuelExhausted,
    GeneralizedSystem,
    InferenceSystem,
    ProofGraph,
    RuleInstance,
    Verdict,
    ground_rules,
    union_system,
    validate_bounded_proof_graph,
    validate_proof_graph,
)
from regcoind.streams import canonicalize, rep
from regcoind.systems import AllPos, Dist, Min, allpos_system, dist_system, sample_graph, min_system


def _fig1_certificate() -> ProofGraph:
    inf = float("inf")
    ac2, bc1, cc0, dc_inf = Dist("a", "c", 2), Dist("b", "c", 1), Dist("c", "c", 0), Dist("d", "c", inf)
    return ProofGraph(ac2, {
        ac2: RuleInstance.of([bc1, dc_inf], ac2),
        bc1: RuleInstance.of([Dist("a", "c", 2), cc0], bc1),
        cc0: RuleInstance.of([], cc0),
        dc_inf: RuleInstance.of([dc_inf], dc_inf),
    })


class SettingsTests(unittest.TestCase):
    """Validate budget fallback order: runtime, environment, constant."""
    def setUp(self):
        self.env_patch = patch.dict(os.environ, {}, clear=True)
        self.env_patch.start()
        core._settings.budget = None  # pylint: disable=protected-access

    def tearDown(self):
        core._settings.budget = None  # pylint: disable=protected-access
        self.env_patch.stop()

    def test_default_budget_used_when_none_configured(self):
        self.assertEqual(core.get_default_budget(), core.DEFAULT_BUDGET)
        self.assertEqual(core.DEFAULT_BUDGET, 10000)

    def test_env_overrides_default(self):
        os.environ[core.BUDGET_ENV] = "250"
        self.assertEqual(core.get_default_budget(), 250)

    def test_runtime_overrides_env(self):
        os.environ[core.BUDGET_ENV] = "250"
        core.set_default_budget(42)
        self.assertEqual(core.get_default_budget(), 42)
        core.set_default_budget(None)
        self.assertEqual(core.get_default_budget(), 250)

    def test_invalid_env_value_falls_back_with_warning(self):
        for raw in ("many", "0", "-3"):
            os.environ[core.BUDGET_ENV] = raw
            with self.assertLogs("regcoind.core", level="WARNING"):
                self.assertEqual(core.get_default_budget(), core.DEFAULT_BUDGET)

    def test_non_positive_runtime_budget_rejected(self):
        with self.assertRaises(ValueError):
            core.set_default_budget(0)
        with self.assertRaises(ValueError):
            core.require_budget(True)

    def test_configure_logging_installs_one_handler(self):
        core.configure_logging("DEBUG")
        core.configure_logging("ERROR")
        package_logger = logging.getLogger("regcoind")
        ours = [h for h in package_logger.handlers if getattr(h, "_regcoind", False)]
        self.assertEqual(len(ours), 1)
        self.assertEqual(package_logger.level, logging.ERROR)
        core.configure_logging("WARNING")


class RuleAndSystemTests(unittest.TestCase):
    """Rules are sets of premises; enumerators honour their contract."""
    def test_rule_rendering_sorts_premises(self):
        self.assertEqual(str(RuleInstance.of(["b", "a"], "c")), "[a, b] => c")
        self.assertEqual(RuleInstance.of(["a", "a"], "c"), RuleInstance.of(["a"], "c"))

    def test_rules_for_deduplicates(self):
        rule = RuleInstance.of(["a"], "b")
        system = InferenceSystem(lambda j: [rule, rule] if j == "b" else [])
        self.assertEqual(system.rules_for("b"), (rule,))
        self.assertEqual(system.rules_for("a"), ())

    def test_rules_for_rejects_wrong_conclusion(self):
        system = InferenceSystem(lambda j: [RuleInstance.of([], "z")], name="broken")
        with self.assertRaisesRegex(ValueError, "broken"):
            system.rules_for("a")

    def test_union_with_empty_is_identity(self):
        system = allpos_system()
        for stream in (rep(1), canonicalize([2, 1], [3]), canonicalize([0], [1])):
            judgment = AllPos(stream)
            self.assertEqual(union_system(system, EMPTY_SYSTEM).rules_for(judgment), system.rules_for(judgment))

    def test_union_of_min_rules_and_coaxiom(self):
        gen = min_system(with_coaxiom=True)
        judgment = Min(2, rep(2))
        rules = gen.union().rules_for(judgment)
        self.assertEqual(rules, (RuleInstance.of([Min(2, rep(2))], judgment), RuleInstance.of([], judgment)))

    def test_union_of_ground_systems_shares_rules(self):
        shared = RuleInstance.of(["a"], "b")
        first = ground_rules([RuleInstance.of([], "b"), shared])
        second = ground_rules([shared, RuleInstance.of(["c"], "b")])
        rules = union_system(first, second).rules_for("b")
        self.assertEqual(len(rules), 3)
        self.assertEqual(rules[:2], first.rules_for("b"))

    def test_fuel_counts_against_budget(self):
        fuel = Fuel(2)
        fuel.spend()
        fuel.spend()
        with self.assertRaises(FuelExhausted):
            fuel.spend()
        self.assertEqual(fuel.used, 2)


class ValidateProofGraphTests(unittest.TestCase):
    """Structural and bounded certificate checks."""
    def test_sample_certificate_is_valid(self):
        result = validate_proof_graph(dist_system(sample_graph()), _fig1_certificate())
        self.assertTrue(result)
        self.assertIs(result.verdict, Verdict.VALID)

    def test_single_axiom(self):
        system = ground_rules([RuleInstance.of([], "a")])
        self.assertTrue(validate_proof_graph(system, ProofGraph("a", {"a": RuleInstance.of([], "a")})))

    def test_missing_premise(self):
        system = ground_rules([RuleInstance.of(["b"], "a")])
        result = validate_proof_graph(system, ProofGraph("a", {"a": RuleInstance.of(["b"], "a")}))
        self.assertFalse(result)
        self.assertIn("premise b", result.diagnostic)

    def test_missing_root(self):
        result = validate_proof_graph(EMPTY_SYSTEM, ProofGraph("a", {}))
        self.assertIs(result.verdict, Verdict.INVALID)
        self.assertIn("root a", result.diagnostic)

    def test_rule_not_in_system(self):
        result = validate_proof_graph(EMPTY_SYSTEM, ProofGraph("a", {"a": RuleInstance.of([], "a")}))
        self.assertIn("not a rule", result.diagnostic)

    def test_unreachable_node(self):
        system = ground_rules([RuleInstance.of([], "a"), RuleInstance.of([], "b")])
        cert = ProofGraph("a", {"a": RuleInstance.of([], "a"), "b": RuleInstance.of([], "b")})
        result = validate_proof_graph(system, cert)
        self.assertIn("b is not reachable", result.diagnostic)

    def test_monotone_in_the_system(self):
        cert = ProofGraph("a", {"a": RuleInstance.of(["a"], "a")})
        small = ground_rules([RuleInstance.of(["a"], "a")])
        large = ground_rules([RuleInstance.of([], "a"), RuleInstance.of(["a"], "a")])
        self.assertTrue(validate_proof_graph(small, cert))
        self.assertTrue(validate_proof_graph(large, cert))

    def test_bounded_accepts_min_two(self):
        judgment = Min(2, rep(2))
        cert = ProofGraph(judgment, {judgment: RuleInstance.of([judgment], judgment)})
        self.assertTrue(validate_bounded_proof_graph(min_system(with_coaxiom=True), cert, 100))

    def test_bounded_rejects_min_zero(self):
        judgment = Min(0, rep(2))
        cert = ProofGraph(judgment, {judgment: RuleInstance.of([judgment], judgment)})
        gen = min_system(with_coaxiom=True)
        self.assertTrue(validate_proof_graph(gen.rules, cert))
        result = validate_bounded_proof_graph(gen, cert, 100)
        self.assertIs(result.verdict, Verdict.INVALID)
        self.assertIn("min 0 |2", result.diagnostic)

    def test_bounded_without_corules_needs_finite_proofs(self):
        gen = GeneralizedSystem(ground_rules([RuleInstance.of(["a"], "a")]))
        cert = ProofGraph("a", {"a": RuleInstance.of(["a"], "a")})
        self.assertFalse(validate_bounded_proof_graph(gen, cert, 10))

    def test_bounded_out_of_fuel(self):
        rules = [RuleInstance.of(["b"], "a"), RuleInstance.of(["a"], "b")]
        corules = [RuleInstance.of([], "b")]
        gen = GeneralizedSystem(ground_rules(rules), ground_rules(corules))
        cert = ProofGraph("a", {"a": rules[0], "b": rules[1]})
        result = validate_bounded_proof_graph(gen, cert, 1)
        self.assertIs(result.verdict, Verdict.OUT_OF_FUEL)

    def test_bounded_rejects_zero_budget(self):
        with self.assertRaises(ValueError):
            validate_bounded_proof_graph(min_system(with_coaxiom=True), _fig1_certificate(), 0)

    def test_check_result_truthiness(self):
        self.assertTrue(CheckResult(Verdict.VALID))
        self.assertFalse(CheckResult(Verdict.OUT_OF_FUEL, "budget"))


if __name__ == "__main__":
    unittest.main()
