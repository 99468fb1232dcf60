"""Eventually periodic binary sequences.

Points of the binary sequence space are stored exactly as a finite prefix
plus a repeating cycle, so prepending symbols and measuring the first
disagreement are exact operations (all distances are powers of two).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm


def _primitive_cycle(cycle: tuple[int, ...]) -> tuple[int, ...]:
    n = len(cycle)
    for period in range(1, n + 1):
        if n % period:
            continue
        if cycle == cycle[:period] * (n // period):
            return cycle[:period]
    return cycle


def _canonical(prefix: tuple[int, ...], cycle: tuple[int, ...]):
    cycle = _primitive_cycle(cycle)
    prefix = list(prefix)
    # absorb prefix symbols that merely restate the tail, so equal sequences
    # share one representation
    while prefix and prefix[-1] == cycle[-1]:
        prefix.pop()
        cycle = cycle[-1:] + cycle[:-1]
    return tuple(prefix), cycle


@dataclass(frozen=True)
class BinarySeq:
    """One point of the binary sequence space: prefix followed by a cycle."""

    prefix: tuple[int, ...] = ()
    cycle: tuple[int, ...] = (0,)

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be non-empty")
        for bit in self.prefix + self.cycle:
            if bit not in (0, 1):
                raise ValueError(f"symbols must be 0 or 1, got {bit!r}")
        prefix, cycle = _canonical(tuple(self.prefix), tuple(self.cycle))
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    def item(self, i: int) -> int:
        if i < 0:
            raise IndexError("sequence indices start at 0")
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def take(self, n: int) -> tuple[int, ...]:
        return tuple(self.item(i) for i in range(n))

    def first_difference(self, other: BinarySeq) -> int | None:
        """Index of the first disagreeing symbol, or None when equal.

        Two eventually periodic sequences that agree past both prefixes for a
        full common period agree everywhere, so the scan is bounded.
        """
        if self.prefix == other.prefix and self.cycle == other.cycle:
            return None
        bound = max(len(self.prefix), len(other.prefix)) + lcm(
            len(self.cycle), len(other.cycle)
        )
        for i in range(bound):
            if self.item(i) != other.item(i):
                return i
        return None

    def prepend(self, bit: int) -> BinarySeq:
        return BinarySeq((bit,) + self.prefix, self.cycle)

    def shift(self) -> BinarySeq:
        """Drop the first symbol."""
        if self.prefix:
            return BinarySeq(self.prefix[1:], self.cycle)
        return BinarySeq((), self.cycle[1:] + self.cycle[:1])

    def with_head(self, head: tuple[int, ...]) -> BinarySeq:
        """Copy with the first len(head) symbols replaced by `head`."""
        n = max(len(head), len(self.prefix))
        symbols = list(self.take(n))
        symbols[: len(head)] = list(head)
        start = (n - len(self.prefix)) % len(self.cycle)
        return BinarySeq(tuple(symbols), self.cycle[start:] + self.cycle[:start])

    def with_flipped(self, i: int) -> BinarySeq:
        """Copy with symbol i replaced by its complement."""
        head = list(self.take(i + 1))
        head[i] ^= 1
        return self.with_head(tuple(head))

    def __str__(self) -> str:
        return "".join(map(str, self.prefix)) + "|" + "".join(map(str, self.cycle))

    @classmethod
    def from_string(cls, text: str) -> BinarySeq:
        head, sep, tail = text.partition("|")
        if not sep or not tail:
            raise ValueError(f"expected 'prefix|cycle', got {text!r}")
        return cls(tuple(int(c) for c in head), tuple(int(c) for c in tail))


def sequence_distance(s: BinarySeq, t: BinarySeq) -> float:
    """1 / 2**k where symbol k+1 (counting from one) first disagrees."""
    diff = s.first_difference(t)
    if diff is None:
        return 0.0
    return 2.0 ** (-diff)
