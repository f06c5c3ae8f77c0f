"""Brute-force recovery of ``(u, v)`` from ``p_a(u) * p_a(v)`` on known base sets.

Protocol transcripts leak one such product per round, each on a fresh base set.
The attacker lists every pair below a bound matching each observation and
intersects the lists.  This measures how fast the ambiguity collapses; it says
nothing about attacks smarter than exhaustion.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BoundTooLarge
from .partitions import BaseSet, count_bounded, count_table, splitmix64

DEFAULT_CEILING = 200


@dataclass(frozen=True)
class Observation:
    base: BaseSet
    alpha: int
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("observed value must be nonnegative")


def observe(u: int, v: int, base: BaseSet, alpha: int) -> Observation:
    return Observation(base, alpha, count_bounded(base, alpha, u) * count_bounded(base, alpha, v))


def enumerate_product_preimages(
    obs: Observation, bound: int, ceiling: int = DEFAULT_CEILING
) -> frozenset:
    """All ``(u, v)`` with ``1 <= u <= v <= bound`` reproducing the observed value."""
    if bound > ceiling:
        raise BoundTooLarge(f"bound {bound} exceeds ceiling {ceiling}")
    if bound < 1:
        return frozenset()
    table = count_table(obs.base, obs.alpha, bound)
    by_value = defaultdict(list)
    for arg in range(1, bound + 1):
        by_value[table[arg]].append(arg)
    pairs = set()
    if obs.value == 0:
        for u in by_value[0]:
            for v in range(1, bound + 1):
                pairs.add((min(u, v), max(u, v)))
        return frozenset(pairs)
    for u in range(1, bound + 1):
        c = table[u]
        if c == 0 or obs.value % c:
            continue
        for v in by_value.get(obs.value // c, ()):
            if u <= v:
                pairs.add((u, v))
    return frozenset(pairs)


@dataclass(frozen=True)
class AttackResult:
    candidates: frozenset
    sizes: tuple[int, ...]  # candidate count after each observation


def attack_recover_pair(
    observations: Sequence[Observation], bound: int, ceiling: int = DEFAULT_CEILING
) -> AttackResult:
    if not observations:
        raise ValueError("at least one observation is required")
    candidates = None
    sizes = []
    for obs in observations:
        found = enumerate_product_preimages(obs, bound, ceiling)
        candidates = found if candidates is None else candidates & found
        sizes.append(len(candidates))
    return AttackResult(candidates, tuple(sizes))


def experiment_base_sets(seed: int, k: int, max_element: int, density=Fraction(1, 2)) -> list[BaseSet]:
    return [BaseSet.seeded_random(splitmix64(seed, i + 1), density, max_element) for i in range(k)]


def run_experiment(
    pairs: Sequence[tuple[int, int]],
    alpha: int = 1,
    k: int = 3,
    bound: int = 30,
    seed: int = 0,
    density=Fraction(1, 2),
) -> dict:
    """Candidate-set sizes after 1..k observations for each hidden pair."""
    start = time.perf_counter()
    rows = []
    for index, (u, v) in enumerate(pairs):
        u, v = min(u, v), max(u, v)
        bases = experiment_base_sets(splitmix64(seed, index + 1), k, bound, density)
        result = attack_recover_pair([observe(u, v, b, alpha) for b in bases], bound)
        rows.append(
            {
                "u": u,
                "v": v,
                "sizes": list(result.sizes),
                "contains_true": (u, v) in result.candidates,
                "unique": result.candidates == frozenset({(u, v)}),
            }
        )
    elapsed = time.perf_counter() - start
    sizes_by_k = [[row["sizes"][j] for row in rows] for j in range(k)]
    return {
        "alpha": alpha,
        "bound": bound,
        "k": k,
        "seed": seed,
        "pairs": rows,
        "mean_size_by_k": [sum(s) / len(s) if s else 0.0 for s in sizes_by_k],
        "max_size_by_k": [max(s) if s else 0 for s in sizes_by_k],
        "unique_fraction": sum(r["unique"] for r in rows) / len(rows) if rows else 0.0,
        "wall_time_s": elapsed,
    }
