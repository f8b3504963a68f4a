"""Command-line front end.

``regcoind (--example NAME | --system FILE) [--mode M] GOAL...`` searches for
derivations; ``regcoind --oracle FILE`` tabulates the fixed points of a
ground system.

Exit statuses: 0 proved, 1 refuted, 2 out of fuel, 64 usage error,
65 malformed input. With several goals the worst status wins.
"""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .core import GeneralizedSystem, Judgment, ProofGraph, configure_logging, get_default_budget, require_budget
from .ground import GroundPair, GroundSystem, GroundSystemError, flex_regular_bruteforce, gfp, lfp, rfp_bruteforce
from .proofgraph import render
from .search import FiniteTree, SearchOutcome, Status, prove_inductive, prove_regular, prove_regular_co
from .syntax import ParseError, parse_goal, parse_graph_text, parse_ground_text
from .systems import (
    EXAMPLE_NAMES,
    Add,
    AllPos,
    Dist,
    Graph,
    Min,
    add_system,
    allpos_system,
    dist_system,
    sample_graph,
    min_system,
)

logger = logging.getLogger(__name__)

EXIT_PROVED = 0
EXIT_REFUTED = 1
EXIT_OUT_OF_FUEL = 2
EXIT_USAGE = 64
EXIT_DATA = 65

MODES = ("inductive", "regular", "regular-co")

_EXIT_BY_STATUS = {
    Status.PROVED: EXIT_PROVED,
    Status.REFUTED: EXIT_REFUTED,
    Status.OUT_OF_FUEL: EXIT_OUT_OF_FUEL,
}

# Graph identifier carried by dist judgments built from the command line.
GRAPH_ID = "G"


class UsageError(ValueError):
    """A request that is well-formed text but cannot be served."""


@dataclass(frozen=True)
class QuerySystem:
    """A system ready for queries, with the reader for its goal syntax."""
    name: str
    gen: GeneralizedSystem
    has_corules: bool
    read_judgment: Callable[[str], Judgment]


@dataclass(frozen=True)
class QueryRequest:
    """One query: a system source, a mode, a goal and a budget."""
    goal: str
    mode: str = "regular"
    example: Optional[str] = None
    system_path: Optional[str] = None
    graph_path: Optional[str] = None
    base: int = 10
    budget: Optional[int] = None
    emit_graph: Optional[str] = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise UsageError(f"Unknown mode {self.mode!r}; expected one of {', '.join(MODES)}.")
        if (self.example is None) == (self.system_path is None):
            raise UsageError("Give exactly one of an example name or a system file.")
        if self.budget is not None:
            require_budget(self.budget)


def _read_atom(text: str) -> str:
    atom = text.strip()
    if not atom:
        raise ParseError("empty goal")
    return atom


def _goal_reader(kind: type, **options) -> Callable[[str], Judgment]:
    def _read(text: str) -> Judgment:
        goal = parse_goal(text, **options)
        if not isinstance(goal, kind):
            raise ParseError(f"expected a {kind.__name__.lower()} goal, got {text.strip()!r}")
        return goal

    return _read


def example_system(name: str, base: int = 10, graph: Optional[Graph] = None) -> QuerySystem:
    """One of the built-in systems; ``graph`` defaults to the four-node example."""
    if name == "allpos":
        return QuerySystem(name, GeneralizedSystem(allpos_system()), False, _goal_reader(AllPos))
    if name == "dist":
        system = dist_system(graph or sample_graph(), GRAPH_ID)
        return QuerySystem(name, GeneralizedSystem(system), False, _goal_reader(Dist, graph_id=GRAPH_ID))
    if name == "min":
        return QuerySystem(name, min_system(with_coaxiom=True), True, _goal_reader(Min))
    if name == "add":
        return QuerySystem(f"add[{base}]", add_system(base), True, _goal_reader(Add, base=base))
    raise UsageError(f"Unknown example {name!r}; expected one of {', '.join(EXAMPLE_NAMES)}.")


def ground_query_system(ground: Union[GroundSystem, GroundPair], name: str = "ground") -> QuerySystem:
    if isinstance(ground, GroundPair):
        return QuerySystem(name, ground.generalized(), True, _read_atom)
    return QuerySystem(name, GeneralizedSystem(ground.system), False, _read_atom)


def load_ground_system(path: str) -> Union[GroundSystem, GroundPair]:
    """Read a ground-system file; a ``corule:`` line makes it a GroundPair."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_ground_text(text)


def resolve_system(request: QueryRequest) -> QuerySystem:
    if request.system_path is not None:
        return ground_query_system(load_ground_system(request.system_path), Path(request.system_path).name)
    graph = None
    if request.graph_path is not None:
        graph = parse_graph_text(Path(request.graph_path).read_text(encoding="utf-8"))
    return example_system(request.example, request.base, graph)


def prove_goal(system: QuerySystem, goal: Judgment, mode: str, budget: Optional[int] = None) -> SearchOutcome:
    """Run ``goal`` under ``mode``; the default budget applies when none is given."""
    budget = get_default_budget() if budget is None else budget
    logger.info("%s: %s %s (budget %d)", system.name, mode, goal, budget)
    if mode == "inductive":
        return prove_inductive(system.gen.rules, goal, budget)
    if mode == "regular":
        return prove_regular(system.gen.rules, goal, budget)
    if mode == "regular-co":
        if not system.has_corules:
            raise UsageError(f"Mode regular-co needs corules; {system.name} has none.")
        return prove_regular_co(system.gen, goal, budget)
    raise UsageError(f"Unknown mode {mode!r}; expected one of {', '.join(MODES)}.")


def format_report(goal: Judgment, outcome: SearchOutcome) -> str:
    """Status line, then the certificate on PROVED."""
    lines = [f"{outcome.status.value} {goal} (fuel {outcome.fuel_used})"]
    if isinstance(outcome.certificate, ProofGraph):
        lines.append(render(outcome.certificate, "structured-text").rstrip("\n"))
    elif isinstance(outcome.certificate, FiniteTree):
        lines.append(outcome.certificate.pretty())
    return "\n".join(lines) + "\n"


def _emit_path(path: str, index: int, total: int) -> Path:
    target = Path(path)
    if total == 1:
        return target
    return target.with_name(f"{target.stem}-{index}{target.suffix}")


def _answer(
    system: QuerySystem,
    goal: Judgment,
    mode: str,
    budget: Optional[int],
    emit_graph: Optional[Path],
) -> Tuple[int, str]:
    outcome = prove_goal(system, goal, mode, budget)
    if emit_graph is not None:
        if isinstance(outcome.certificate, ProofGraph):
            emit_graph.write_text(render(outcome.certificate, "graph-text"), encoding="utf-8")
        else:
            logger.info("no proof graph for %s; %s not written", goal, emit_graph)
    return _EXIT_BY_STATUS[outcome.status], format_report(goal, outcome)


def run_query(request: QueryRequest) -> Tuple[int, str]:
    """(exit status, report) for one request; the graph file is written on PROVED."""
    system = resolve_system(request)
    goal = system.read_judgment(request.goal)
    emit = Path(request.emit_graph) if request.emit_graph else None
    return _answer(system, goal, request.mode, request.budget, emit)


def run_batch(
    system: QuerySystem,
    goals: Sequence[str],
    mode: str,
    budget: Optional[int] = None,
    emit_graph: Optional[str] = None,
    jobs: int = 1,
) -> Tuple[int, List[str]]:
    """Run several goals concurrently; reports keep input order, the worst status wins."""
    if jobs < 1:
        raise UsageError("--jobs must be at least 1.")
    # Parse everything first so a bad goal fails before any search runs.
    judgments = [system.read_judgment(text) for text in goals]
    emits = [_emit_path(emit_graph, i, len(judgments)) if emit_graph else None for i in range(len(judgments))]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(lambda job: _answer(system, job[0], mode, budget, job[1]), zip(judgments, emits)))
    return max(code for code, _ in results), [report for _, report in results]


def oracle_rows(ground: Union[GroundSystem, GroundPair]) -> List[Dict[str, object]]:
    """Membership of every universe judgment in Ind, Reg, CoInd and Reg with corules.

    A plain system is paired with no corules, so its Reg+CO column equals Ind.
    """
    if isinstance(ground, GroundPair):
        rules, corules = ground.rules, ground.corules
    else:
        rules, corules = ground, GroundSystem(ground.universe, ())
    ind, reg, coind = lfp(rules), rfp_bruteforce(rules), gfp(rules)
    if not ind <= reg == coind:
        raise RuntimeError(f"fixed points out of order: lfp {sorted(ind)}, rfp {sorted(reg)}, gfp {sorted(coind)}")
    reg_co = flex_regular_bruteforce(rules, corules)
    return [
        {"judgment": j, "ind": j in ind, "reg": j in reg, "coind": j in coind, "reg_co": j in reg_co}
        for j in sorted(rules.universe)
    ]


def run_oracle_report(path: str) -> str:
    """Table of oracle memberships for the ground system in ``path``."""
    rows = oracle_rows(load_ground_system(path))
    width = max([len("judgment")] + [len(str(row["judgment"])) for row in rows])
    columns = (("Ind", "ind"), ("Reg", "reg"), ("CoInd", "coind"), ("Reg+CO", "reg_co"))
    lines = ["judgment".ljust(width) + "".join(f"  {title:<6}" for title, _ in columns)]
    for row in rows:
        cells = "".join(f"  {('yes' if row[key] else 'no'):<6}" for _, key in columns)
        lines.append(str(row["judgment"]).ljust(width) + cells)
    return "\n".join(line.rstrip() for line in lines) + "\n"


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with EXIT_USAGE."""

    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="regcoind",
        description="Regular and corule-bounded proof search.",
        epilog="exit status: 0 proved, 1 refuted, 2 out of fuel, 64 usage error, 65 malformed input",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--example", choices=EXAMPLE_NAMES, help="built-in system")
    source.add_argument("--system", metavar="FILE", help="ground-system file")
    source.add_argument("--oracle", metavar="FILE", help="tabulate fixed-point memberships of a ground system")
    parser.add_argument("--mode", choices=MODES, default="regular")
    parser.add_argument("--budget", type=int, help="rule applications per goal (default: $REGCOIND_BUDGET or 10000)")
    parser.add_argument("--emit-graph", metavar="PATH", help="write the proof graph as graph-text")
    parser.add_argument("--graph", metavar="FILE", help="graph file for --example dist")
    parser.add_argument("--base", type=int, default=10, help="digit base for --example add")
    parser.add_argument("--jobs", type=int, default=1, help="goals searched concurrently")
    parser.add_argument("--log-level", help="logging level (default: $REGCOIND_LOG_LEVEL or WARNING)")
    parser.add_argument("goals", nargs="*", metavar="GOAL")
    return parser


def _run_prove(args: argparse.Namespace) -> int:
    if not args.goals:
        raise UsageError("Give at least one GOAL.")
    if args.budget is not None and args.budget < 1:
        raise UsageError(f"--budget must be positive, got {args.budget}.")
    if args.graph and args.example != "dist":
        raise UsageError("--graph only applies to --example dist.")
    request = QueryRequest(
        goal=args.goals[0],
        mode=args.mode,
        example=args.example,
        system_path=args.system,
        graph_path=args.graph,
        base=args.base,
        budget=args.budget,
    )
    system = resolve_system(request)
    status, reports = run_batch(system, args.goals, args.mode, args.budget, args.emit_graph, args.jobs)
    sys.stdout.write("".join(reports))
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Console entry point; returns the exit status."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        if args.oracle is not None:
            if args.goals:
                raise UsageError("--oracle takes no GOAL arguments.")
            sys.stdout.write(run_oracle_report(args.oracle))
            return EXIT_PROVED
        return _run_prove(args)
    except (ParseError, GroundSystemError) as exc:
        print(f"regcoind: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, OSError) as exc:
        print(f"regcoind: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())


__all__ = [name for name in globals() if not name.startswith("_")]
