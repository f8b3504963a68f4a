"""Tests for the MCP tool payloads."""
# pylint: disable=missing-function-docstring

import logging
import unittest
from unittest.mock import patch

from regcoind import server


class ProvePayloadTests(unittest.TestCase):
    """prove_judgment behaviour without the MCP transport."""
    def test_example_goal(self):
        payload = server.prove_payload("dist a c 2", example="dist")
        self.assertTrue(payload["success"])
        self.assertEqual(payload["status"], "PROVED")
        self.assertEqual(payload["goal"], "dist a c 2")
        self.assertIn("edge 0 1", payload["graph"])

    def test_ground_system_text(self):
        payload = server.prove_payload("a", system_text="rule: [a] => a\n", mode="inductive")
        self.assertEqual(payload["status"], "REFUTED")
        self.assertNotIn("certificate", payload)

    def test_custom_graph(self):
        payload = server.prove_payload("dist x y inf", example="dist", graph_text="node x\nnode y\n")
        self.assertEqual(payload["status"], "PROVED")

    def test_errors_are_wrapped(self):
        wrapped = server._wrap_tool(lambda: server.prove_payload("a"))  # pylint: disable=protected-access
        self.assertFalse(wrapped["success"])
        self.assertIn("exactly one", wrapped["error"])
        wrapped = server._wrap_tool(  # pylint: disable=protected-access
            lambda: server.prove_payload("allpos |1", example="allpos", mode="regular-co")
        )
        self.assertFalse(wrapped["success"])


class CheckAndOraclePayloadTests(unittest.TestCase):
    """check_certificate, oracle_report and list_examples."""
    def test_certificate_round_trip(self):
        proved = server.prove_payload("min 2 |2", example="min", mode="regular-co")
        checked = server.check_payload(proved["certificate"], example="min", bounded=True, budget=1000)
        self.assertEqual(checked["verdict"], "valid")
        self.assertIsNone(checked["diagnostic"])

    def test_unbounded_certificate_fails_bounded_check(self):
        proved = server.prove_payload("min 0 |2", example="min")
        self.assertEqual(server.check_payload(proved["certificate"], example="min")["verdict"], "valid")
        checked = server.check_payload(proved["certificate"], example="min", bounded=True)
        self.assertEqual(checked["verdict"], "invalid")
        self.assertIn("min 0 |2", checked["diagnostic"])

    def test_zero_budget_is_rejected(self):
        proved = server.prove_payload("min 2 |2", example="min", mode="regular-co")
        wrapped = server._wrap_tool(  # pylint: disable=protected-access
            lambda: server.check_payload(proved["certificate"], example="min", bounded=True, budget=0)
        )
        self.assertFalse(wrapped["success"])
        self.assertIn("budget", wrapped["error"])

    def test_oracle_rows(self):
        payload = server.oracle_payload("rule: [a] => a\n")
        self.assertEqual(
            payload["rows"],
            [{"judgment": "a", "ind": False, "reg": True, "coind": True, "reg_co": False}],
        )

    def test_examples(self):
        names = [entry["name"] for entry in server.examples_payload()["examples"]]
        self.assertEqual(names, ["allpos", "dist", "min", "add"])


class EntryPointTests(unittest.TestCase):
    """main() sets up logging before handing stdio to the MCP server."""
    def tearDown(self):
        logging.getLogger("regcoind").setLevel(logging.WARNING)

    def test_main_configures_logging_and_runs_quietly(self):
        with patch.object(server.mcp, "run") as run:
            server.main("DEBUG")
        run.assert_called_once_with(show_banner=False, log_level="WARNING")
        self.assertEqual(logging.getLogger("regcoind").level, logging.DEBUG)


if __name__ == "__main__":
    unittest.main()
