"""Partition counting over restricted sets of parts.

``count_unrestricted(A, n)`` is the number of partitions of ``n`` whose parts
all lie in ``A``; ``count_bounded(A, alpha, n)`` additionally caps how often a
single part may repeat.  Both are exact integer dynamic programs.  Infinite base
sets are truncated at ``n`` since larger parts cannot appear.

``enumerate_partitions`` lists the partitions themselves and is only meant as a
slow, independent oracle for small ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import OracleCeilingExceeded

MASK64 = (1 << 64) - 1
SPLITMIX_GAMMA = 0x9E3779B97F4A7C15

DEFAULT_ORACLE_CEILING = 30

KINDS = ("primes", "squares", "odds", "naturals", "explicit", "random")


def splitmix64(seed: int, k: int) -> int:
    """Return the ``k``-th output (``k >= 1``) of SplitMix64 seeded with ``seed``.

    The generator state after ``k`` steps is ``seed + k * gamma (mod 2**64)``,
    so any draw can be computed directly.
    """
    z = (seed + k * SPLITMIX_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i in range(limit + 1) if sieve[i]]


@dataclass(frozen=True)
class BaseSet:
    """A set of allowed parts.

    Use the classmethod constructors rather than building instances by hand.
    ``random`` sets include ``k`` in ``[1, max_element]`` iff the ``k``-th
    SplitMix64 draw from ``seed``, read as a fraction of ``2**64``, is below
    ``density``.
    """

    kind: str
    elements: tuple[int, ...] = ()
    seed: int = 0
    density: Fraction = Fraction(1)
    max_element: int = 0
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown base set kind {self.kind!r}")
        if self.kind == "random":
            if not (0 < self.density <= 1):
                raise ValueError("density must lie in (0, 1]")
            if self.max_element < 1:
                raise ValueError("max_element must be positive")
            if not (0 <= self.seed <= MASK64):
                raise ValueError("seed must be an unsigned 64-bit integer")

    @classmethod
    def primes(cls) -> "BaseSet":
        return cls("primes")

    @classmethod
    def squares(cls) -> "BaseSet":
        return cls("squares")

    @classmethod
    def odds(cls) -> "BaseSet":
        return cls("odds")

    @classmethod
    def naturals(cls) -> "BaseSet":
        return cls("naturals")

    @classmethod
    def explicit(cls, values) -> "BaseSet":
        values = sorted(set(int(v) for v in values))
        if values and values[0] < 1:
            raise ValueError("explicit base sets hold positive integers only")
        return cls("explicit", elements=tuple(values))

    @classmethod
    def seeded_random(cls, seed: int, density=Fraction(1, 2), max_element: int = 200) -> "BaseSet":
        return cls("random", seed=int(seed), density=Fraction(density), max_element=int(max_element))

    @classmethod
    def parse(cls, text: str) -> "BaseSet":
        """Parse ``primes``, ``explicit:1,4,9``, ``random:seed=42,density=1/2,max=200`` etc."""
        text = text.strip()
        head, _, rest = text.partition(":")
        head = head.strip().lower()
        if head in ("primes", "squares", "odds", "naturals") and not rest:
            return cls(head)
        if head == "explicit":
            values = [v for v in rest.split(",") if v.strip()]
            return cls.explicit(int(v) for v in values)
        if head == "random":
            opts = {}
            for item in rest.split(","):
                if not item.strip():
                    continue
                key, sep, value = item.partition("=")
                if not sep:
                    raise ValueError(f"malformed random base set option {item!r}")
                opts[key.strip()] = value.strip()
            unknown = set(opts) - {"seed", "density", "max"}
            if unknown or "seed" not in opts:
                raise ValueError(f"random base set needs seed=, optional density=, max= (got {text!r})")
            return cls.seeded_random(
                int(opts["seed"]),
                Fraction(opts.get("density", "1/2")),
                int(opts.get("max", "200")),
            )
        raise ValueError(f"cannot parse base set {text!r}")

    def __str__(self):
        if self.kind == "explicit":
            return "explicit:" + ",".join(map(str, self.elements))
        if self.kind == "random":
            return f"random:seed={self.seed},density={self.density},max={self.max_element}"
        return self.kind

    def parts_up_to(self, limit: int) -> tuple[int, ...]:
        if limit < 0:
            raise ValueError("limit must be nonnegative")
        cached = self._cache.get(limit)
        if cached is not None:
            return cached
        if self.kind == "primes":
            parts = _primes_up_to(limit)
        elif self.kind == "squares":
            parts = [k * k for k in range(1, math.isqrt(limit) + 1)]
        elif self.kind == "odds":
            parts = list(range(1, limit + 1, 2))
        elif self.kind == "naturals":
            parts = list(range(1, limit + 1))
        elif self.kind == "explicit":
            parts = [v for v in self.elements if v <= limit]
        else:
            threshold = self.density * (1 << 64)
            parts = [
                k
                for k in range(1, min(limit, self.max_element) + 1)
                if splitmix64(self.seed, k) < threshold
            ]
        result = tuple(parts)
        self._cache[limit] = result
        return result


def parts_up_to(base: BaseSet, limit: int) -> tuple[int, ...]:
    return base.parts_up_to(limit)


@lru_cache(maxsize=4096)
def _count_table(base: BaseSet, alpha: Optional[int], limit: int) -> tuple[int, ...]:
    table = [0] * (limit + 1)
    table[0] = 1
    for part in base.parts_up_to(limit):
        if alpha is None:
            for m in range(part, limit + 1):
                table[m] += table[m - part]
            continue
        previous = table[:]
        for m in range(part, limit + 1):
            total = 0
            for k in range(1, min(alpha, m // part) + 1):
                total += previous[m - k * part]
            table[m] = previous[m] + total
    return tuple(table)


def _check_alpha(alpha):
    if alpha is not None and alpha < 1:
        raise ValueError("alpha must be a positive integer")


def count_table(base: BaseSet, alpha: Optional[int], limit: int) -> tuple[int, ...]:
    """Counts for every ``m`` in ``0..limit``; ``alpha=None`` means unrestricted."""
    _check_alpha(alpha)
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    return _count_table(base, alpha, limit)


def count_unrestricted(base: BaseSet, n: int) -> int:
    return count_table(base, None, n)[n]


def count_bounded(base: BaseSet, alpha: int, n: int) -> int:
    if alpha is None:
        raise ValueError("alpha is required; use count_unrestricted for no bound")
    return count_table(base, alpha, n)[n]


def enumerate_partitions(
    base: BaseSet,
    alpha: Optional[int],
    n: int,
    ceiling: int = DEFAULT_ORACLE_CEILING,
) -> list[tuple[int, ...]]:
    """All partitions of ``n`` into parts of ``base`` by brute force.

    Each partition is a tuple with parts in descending order; the list is sorted
    lexicographically.
    """
    _check_alpha(alpha)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > ceiling:
        raise OracleCeilingExceeded(f"n={n} exceeds oracle ceiling {ceiling}")
    parts = sorted(base.parts_up_to(n), reverse=True)
    found = []

    def extend(remaining, start, prefix):
        if remaining == 0:
            found.append(tuple(prefix))
            return
        for idx in range(start, len(parts)):
            part = parts[idx]
            if part > remaining:
                continue
            if alpha is not None and prefix.count(part) >= alpha:
                continue
            prefix.append(part)
            extend(remaining - part, idx, prefix)
            prefix.pop()

    extend(n, 0, [])
    return sorted(found)
