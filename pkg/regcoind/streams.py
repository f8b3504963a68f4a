"""Rational streams of integers as canonical lassos (finite prefix + repeating cycle)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

# Largest digit base the addition example supports.
MAX_BASE = 36


def _primitive_root(cycle: Tuple[int, ...]) -> Tuple[int, ...]:
    length = len(cycle)
    for size in range(1, length + 1):
        if length % size == 0 and cycle[:size] * (length // size) == cycle:
            return cycle[:size]
    return cycle


def _canonical_parts(prefix: Sequence[int], cycle: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    if not cycle:
        raise ValueError("A lasso needs a non-empty cycle.")
    pre = tuple(int(x) for x in prefix)
    cyc = _primitive_root(tuple(int(x) for x in cycle))
    while pre and pre[-1] == cyc[-1]:
        pre = pre[:-1]
        cyc = (cyc[-1],) + cyc[:-1]
    return pre, cyc


@dataclass(frozen=True, order=True)
class Lasso:
    """The stream prefix · cycle^ω, always held in canonical form.

    The cycle is primitive and the prefix never ends with the cycle's last
    element, so two lassos are equal iff they denote the same stream.
    """
    prefix: Tuple[int, ...]
    cycle: Tuple[int, ...]

    def __post_init__(self) -> None:
        prefix, cycle = _canonical_parts(self.prefix, self.cycle)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    def __str__(self) -> str:
        return ",".join(map(str, self.prefix)) + "|" + ",".join(map(str, self.cycle))


def canonicalize(prefix: Sequence[int], cycle: Sequence[int]) -> Lasso:
    """Lasso for prefix · cycle^ω; raises ValueError on an empty cycle."""
    return Lasso(tuple(prefix), tuple(cycle))


def rep(*cycle: int) -> Lasso:
    """The purely periodic stream cycle^ω."""
    return canonicalize((), cycle)


def head(stream: Lasso) -> int:
    return stream.prefix[0] if stream.prefix else stream.cycle[0]


def tail(stream: Lasso) -> Lasso:
    if stream.prefix:
        return Lasso(stream.prefix[1:], stream.cycle)
    return Lasso((), stream.cycle[1:] + stream.cycle[:1])


def substreams(stream: Lasso) -> FrozenSet[Lasso]:
    """All iterated tails of ``stream``, itself included."""
    seen = set()
    current = stream
    while current not in seen:
        seen.add(current)
        current = tail(current)
    return frozenset(seen)


def elements(stream: Lasso) -> FrozenSet[int]:
    return frozenset(stream.prefix) | frozenset(stream.cycle)


def unfold_values(stream: Lasso, count: int) -> List[int]:
    """The first ``count`` elements of the stream."""
    if count < 0:
        raise ValueError("count must be non-negative.")
    values = list(stream.prefix[:count])
    while len(values) < count:
        values.extend(stream.cycle[: count - len(values)])
    return values


def _check_base(base: int) -> None:
    if not 2 <= base <= MAX_BASE:
        raise ValueError(f"base must be in 2..{MAX_BASE}, got {base}.")


def check_digits(stream: Lasso, base: int) -> None:
    """Reject streams with elements outside 0..base-1."""
    bad = sorted(d for d in elements(stream) if not 0 <= d < base)
    if bad:
        raise ValueError(f"{stream} has digit {bad[0]} outside 0..{base - 1}.")


def _positional(digits: Iterable[int], base: int) -> int:
    total = 0
    for digit in digits:
        total = total * base + digit
    return total


def _periodic_value(prefix: Sequence[int], cycle: Sequence[int], base: int) -> Fraction:
    # 0.p(c)^ω = (P + C / (b^k - 1)) / b^m
    period = Fraction(_positional(cycle, base), base ** len(cycle) - 1)
    return (_positional(prefix, base) + period) / Fraction(base ** len(prefix))


def value(stream: Lasso, base: int) -> Fraction:
    """Exact value Σ d_i · base^(-i) of a digit stream, in [0, 1]."""
    _check_base(base)
    check_digits(stream, base)
    return _periodic_value(stream.prefix, stream.cycle, base)


def from_fraction(quantity: Fraction, base: int) -> Lasso:
    """Digit lasso of ``quantity`` ∈ [0, 1) by long division."""
    _check_base(base)
    quantity = Fraction(quantity)
    if not 0 <= quantity < 1:
        raise ValueError(f"{quantity} is outside [0, 1).")
    remainder, denominator = quantity.numerator, quantity.denominator
    digits: List[int] = []
    seen: Dict[int, int] = {}
    while remainder not in seen:
        seen[remainder] = len(digits)
        digit, remainder = divmod(remainder * base, denominator)
        digits.append(digit)
    start = seen[remainder]
    return canonicalize(digits[:start], digits[start:])


def _aligned(first: Lasso, second: Lasso) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
    start = max(len(first.prefix), len(second.prefix))
    period = len(first.cycle) * len(second.cycle) // gcd(len(first.cycle), len(second.cycle))
    columns = list(zip(unfold_values(first, start + period), unfold_values(second, start + period)))
    return columns[:start], columns[start:]


def _propagate(columns: Sequence[int], carry_in: int, base: int) -> Tuple[List[int], int]:
    """Right-to-left schoolbook carries over column sums; (digits, carry out)."""
    digits = [0] * len(columns)
    carry = carry_in
    for index in reversed(range(len(columns))):
        carry, digits[index] = divmod(columns[index] + carry, base)
    return digits, carry


def long_addition(first: Lasso, second: Lasso, base: int) -> Tuple[Lasso, int]:
    """(sum, carry) of two digit streams by digitwise long addition.

    The streams are aligned on a common prefix and period. The carry entering
    the period from the infinite tail is the greatest carry that one pass over
    the period reproduces, found by repeating passes from the bound 2. The
    prefix is then added with that carry.
    """
    _check_base(base)
    check_digits(first, base)
    check_digits(second, base)
    prefix_columns, cycle_columns = _aligned(first, second)
    cycle_sums = [a + b for a, b in cycle_columns]
    carry = 2
    while True:
        cycle_digits, carry_out = _propagate(cycle_sums, carry, base)
        if carry_out == carry:
            break
        carry = carry_out
    prefix_digits, carry = _propagate([a + b for a, b in prefix_columns], carry, base)
    return canonicalize(prefix_digits, cycle_digits), carry


__all__ = [name for name in globals() if not name.startswith("_")]
