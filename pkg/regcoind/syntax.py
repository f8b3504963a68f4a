"""Text formats: ground-system files, graph files, lassos and query goals.

All formats are line oriented. Blank lines and ``#`` comments are skipped;
every other line is parsed with the lark grammar below, so errors carry the
line number of the file and the column lark reports.

Ground systems::

    rule: [a, b] => c
    corule: [] => a

Graphs::

    node a -> b, d
    node c

Goals (one per query)::

    allpos 2,1|1        dist a c 2        dist d c inf
    min 0 |2            add |3 |3 |6 0    a   (ground atom)
"""
from __future__ import annotations

from typing import Dict, List, Optional, Tuple, Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import LarkError, UnexpectedInput, VisitError

from .core import RuleInstance
from .ground import GroundPair, GroundSystem, pair_from_rules
from .streams import Lasso, canonicalize
from .systems import INFINITY, AllPos, Add, Dist, Graph, Min

GRAMMAR = r"""
ground_line: KIND ":" "[" atoms? "]" "=>" ATOM
atoms: ATOM ("," ATOM)*
KIND: "rule" | "corule"

graph_line: "node" NAME ("->" names)?
names: NAME ("," NAME)*

?goal: allpos | dist | min | add | atom
allpos: "allpos" lasso
dist: "dist" NAME NAME delta
min: "min" INT lasso
add: "add" lasso lasso lasso INT
atom: ATOM

lasso: ints? "|" ints
ints: INT ("," INT)*
delta: INT | INF

INF: "inf" | "∞"
INT: /-?[0-9]+/
ATOM: /[A-Za-z_][A-Za-z0-9_']*/
NAME: /[A-Za-z0-9_']+/

%ignore /[ \t]+/
"""

_PARSER = Lark(GRAMMAR, parser="lalr", start=["ground_line", "graph_line", "goal", "lasso"])


class ParseError(ValueError):
    """Malformed text; ``line`` is 1-based within the parsed source."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line
        self.column = column


@v_args(inline=True)
class _ToValues(Transformer):
    # pylint: disable=missing-function-docstring

    def __init__(self, base: int = 10, graph_id: str = "G") -> None:
        super().__init__()
        self._base = base
        self._graph_id = graph_id

    def ground_line(self, kind: Token, *rest):
        premises = rest[0] if len(rest) == 2 else []
        return str(kind), RuleInstance.of(premises, str(rest[-1]))

    def atoms(self, *items: Token) -> List[str]:
        return [str(item) for item in items]

    def graph_line(self, node: Token, successors: Optional[List[str]] = None):
        return str(node), successors or []

    def names(self, *items: Token) -> List[str]:
        return [str(item) for item in items]

    def lasso(self, *parts: List[int]) -> Lasso:
        prefix = parts[0] if len(parts) == 2 else []
        return canonicalize(prefix, parts[-1])

    def ints(self, *items: Token) -> List[int]:
        return [int(item) for item in items]

    def delta(self, token: Token):
        return INFINITY if token.type == "INF" else int(token)

    def allpos(self, stream: Lasso) -> AllPos:
        return AllPos(stream)

    def dist(self, source: Token, target: Token, delta) -> Dist:
        return Dist(str(source), str(target), delta, self._graph_id)

    def min(self, value: Token, stream: Lasso) -> Min:
        return Min(int(value), stream)

    def add(self, first: Lasso, second: Lasso, total: Lasso, carry: Token) -> Add:
        return Add(first, second, total, int(carry), self._base)

    def atom(self, name: Token) -> str:
        return str(name)


def _parse(text: str, start: str, line: Optional[int] = None, transformer: Optional[_ToValues] = None):
    try:
        tree = _PARSER.parse(text, start=start)
        return (transformer or _ToValues()).transform(tree)
    except UnexpectedInput as exc:
        column = getattr(exc, "column", None)
        raise ParseError(f"unexpected input at column {column}: {text.strip()!r}", line, column) from exc
    except VisitError as exc:
        # Value errors raised while building judgments (empty cycle, bad digit, ...).
        raise ParseError(str(exc.orig_exc), line) from exc
    except LarkError as exc:
        raise ParseError(str(exc), line) from exc


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def parse_lasso(text: str) -> Lasso:
    """``p1,p2|c1,c2`` (empty prefix written ``|c1,...``), canonicalized."""
    return _parse(text, "lasso")


def parse_goal(text: str, base: int = 10, graph_id: str = "G") -> Union[AllPos, Dist, Min, Add, str]:
    """A judgment in goal syntax; bare identifiers are ground atoms.

    ``base`` and ``graph_id`` fill in the parameters the goal syntax leaves
    implicit for addition and distance judgments.
    """
    return _parse(text, "goal", transformer=_ToValues(base, graph_id))


def parse_ground_text(text: str) -> Union[GroundSystem, GroundPair]:
    """A GroundSystem, or a GroundPair when any ``corule:`` line is present."""
    rules: List[RuleInstance] = []
    corules: List[RuleInstance] = []
    for number, line in _content_lines(text):
        kind, rule = _parse(line, "ground_line", number)
        (rules if kind == "rule" else corules).append(rule)
    if corules:
        return pair_from_rules(rules, corules)
    return GroundSystem.from_rules(rules)


def parse_graph_text(text: str) -> Graph:
    """Graph from ``node v -> s1, s2`` lines; a node may appear on several lines."""
    edges: Dict[str, List[str]] = {}
    for number, line in _content_lines(text):
        node, successors = _parse(line, "graph_line", number)
        edges.setdefault(node, []).extend(successors)
    if not edges:
        raise ParseError("graph has no nodes")
    return Graph.from_mapping(edges)


def format_ground(rules: Tuple[RuleInstance, ...], corules: Tuple[RuleInstance, ...] = ()) -> str:
    """Inverse of parse_ground_text for atom judgments."""
    lines = [f"rule: {rule}" for rule in rules] + [f"corule: {rule}" for rule in corules]
    return "\n".join(lines) + "\n"


__all__ = [name for name in globals() if not name.startswith("_")]
