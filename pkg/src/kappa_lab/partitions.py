"""Integer partitions viewed as cycle types of permutations."""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property
from math import factorial, prod

from .exceptions import UsageError


@dataclass(frozen=True)
class Partition:
    """A cycle type: parts in non-increasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts):
            raise UsageError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise UsageError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts) -> Partition:
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        """Part size -> number of parts of that size."""
        return dict(Counter(self.parts))

    @cached_property
    def centralizer_order(self) -> int:
        """Order of the centralizer in S_n of an element of this cycle type."""
        return prod(d**m * factorial(m) for d, m in self.multiplicities.items())

    @property
    def class_size(self) -> int:
        return factorial(self.n) // self.centralizer_order

    @property
    def sign(self) -> int:
        return -1 if (self.n - len(self.parts)) % 2 else 1

    @property
    def is_even(self) -> bool:
        return self.sign == 1

    @property
    def is_split(self) -> bool:
        # pairwise-distinct odd parts: the S_n class breaks in two under A_n
        return all(p % 2 for p in self.parts) and len(set(self.parts)) == len(self.parts)

    @property
    def largest_part(self) -> int:
        return self.parts[0] if self.parts else 0


def partitions(n: int) -> Iterator[Partition]:
    """Yield every partition of *n* once, in reverse-lexicographic order.

    >>> [p.parts for p in partitions(4)]
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise UsageError(f"n must be >= 0, got {n}")
    if n == 0:
        yield Partition(())
        return
    a = [n]
    while True:
        yield Partition(tuple(a))
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        x = a.pop() - 1
        rest = ones + 1
        a.append(x)
        while rest > x:
            a.append(x)
            rest -= x
        if rest:
            a.append(rest)


def partition_count(n: int) -> int:
    """Number of partitions of *n* via Euler's pentagonal-number recurrence."""
    if n < 0:
        return 0
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > m:
                break
            sgn = 1 if j % 2 else -1
            total += sgn * p[m - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= m:
                total += sgn * p[m - g2]
            j += 1
        p[m] = total
    return p[n]
