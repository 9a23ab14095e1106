"""
Integer partitions and compositions.

Partitions are tuples of weakly decreasing positive integers. Python's native
tuple ordering is the lexicographic order used throughout, because a shorter
tuple that is a prefix of a longer one compares smaller, which is what
padding with zeros gives.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from chromalg.errors import PartitionError


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for p in parts:
            if p < 1:
                raise PartitionError(f"parts must be positive: {parts}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise PartitionError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def num_ones(self) -> int:
        return self.count(1)

    def remove_one(self) -> "Partition":
        """Drop one part equal to 1."""
        if not self or self[-1] != 1:
            raise PartitionError(f"partition {self.text()} has no part equal to 1")
        return Partition(self[:-1])

    def union(self, other: Iterable[int]) -> "Partition":
        """Multiset union of parts."""
        return Partition(sorted(self + tuple(other), reverse=True))

    def text(self) -> str:
        return "+".join(str(p) for p in self) if self else "0"

    def compact(self) -> str:
        if any(p > 9 for p in self):
            return self.text()
        return "".join(str(p) for p in self)

    def __repr__(self):
        return f"Partition({self.text()})"


class Composition(tuple):
    """An ordered tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise PartitionError(f"composition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def __repr__(self):
        return f"Composition({','.join(str(p) for p in self)})"


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """All partitions of n in decreasing lexicographic order."""
    if n < 0:
        raise PartitionError(f"cannot partition a negative number: {n}")

    result = []

    def extend(prefix, remaining, largest):
        if remaining == 0:
            result.append(Partition(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            extend(prefix + [part], remaining - part, part)

    extend([], n, n)
    return tuple(result)


def lex_compare(lam, mu) -> int:
    """-1, 0 or 1 as lam is lexicographically below, equal to, or above mu."""
    lam, mu = tuple(lam), tuple(mu)
    width = max(len(lam), len(mu))
    lam = lam + (0,) * (width - len(lam))
    mu = mu + (0,) * (width - len(mu))
    return (lam > mu) - (lam < mu)


def length(lam) -> int:
    return len(lam)


def num_ones(lam) -> int:
    return tuple(lam).count(1)


def remove_one(lam) -> Partition:
    return Partition(lam).remove_one()


def sort_composition(alpha) -> Partition:
    return Partition(sorted(alpha, reverse=True))


def is_hook(lam) -> bool:
    """True when lam has the form (k, 1, ..., 1)."""
    return len(lam) > 0 and all(p == 1 for p in lam[1:])


def is_hook_21(lam) -> bool:
    """True for the hook (2, 1^{n-2})."""
    return len(lam) >= 1 and lam[0] == 2 and is_hook(lam)


def hook(k: int, n: int) -> Partition:
    """The hook (k, 1^{n-k})."""
    return Partition((k,) + (1,) * (n - k))


def parse_partition(text: str) -> Partition:
    """Parse "3+1+1", "3,1,1" or the compact "311"."""
    text = text.strip()
    if not text or text == "0":
        return Partition()
    try:
        if "+" in text:
            parts = [int(p) for p in text.split("+")]
        elif "," in text:
            parts = [int(p) for p in text.split(",")]
        else:
            parts = [int(c) for c in text]
    except ValueError:
        raise PartitionError(f"malformed partition: {text!r}")
    return sort_composition(parts)
