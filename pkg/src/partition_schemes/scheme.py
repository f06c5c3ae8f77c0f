"""Pieces shared by the three protocol simulations.

All protocols start from the masked product

    (p(n1) - p_a(n1)) * (p(n2) - p_a(n2)) = sum of row products

whose rows come from :func:`expand_pair_product`.  A row handed to a party is
split into a secret sub-product (at least two factors, each argument kept away
from 1, n1 and n2 by ``delta``) and a public complement.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import BadParams, NoViableBaseSet
from .identity import ExpandedProduct, Term, evaluate_term, expand_pair_product
from .partitions import BaseSet, count_bounded, count_unrestricted, splitmix64

Args = tuple[int, ...]


@dataclass(frozen=True)
class SchemeParams:
    n1: int
    n2: int
    alpha: int
    r: int
    delta: int = 2
    rounds: int = 5
    rng_seed: int = 0
    distribute_ratio: Fraction = Fraction(1, 2)
    max_retries: int = 32
    base_density: Fraction = Fraction(3, 4)
    base_max_element: Optional[int] = None

    def validate(self) -> None:
        if self.alpha < 1:
            raise BadParams("alpha must be at least 1")
        if min(self.n1, self.n2) < self.alpha + 1:
            raise BadParams(f"n1 and n2 must be at least alpha+1={self.alpha + 1}")
        if math.gcd(self.n1, self.alpha) != 1 or math.gcd(self.n2, self.alpha) != 1:
            raise BadParams("gcd(n1, alpha) and gcd(n2, alpha) must both be 1")
        if self.r < 2:
            raise BadParams("at least two parties are required")
        if self.delta < 1:
            raise BadParams("delta must be positive")
        if self.rounds < 1:
            raise BadParams("at least one round is required")
        if not (0 < self.distribute_ratio <= 1):
            raise BadParams("distribute_ratio must lie in (0, 1]")
        if self.max_retries < 1:
            raise BadParams("max_retries must be positive")

    @property
    def max_element(self) -> int:
        if self.base_max_element is not None:
            return self.base_max_element
        return 4 * max(self.n1, self.n2)


@dataclass(frozen=True)
class SplitRow:
    row_id: int
    secret_args: Args
    public_args: Args

    @property
    def args(self) -> Args:
        return tuple(sorted(self.secret_args + self.public_args))


def rng_for(seed: int, label: str) -> random.Random:
    # str seeds hash through sha512, stable across platforms and versions
    return random.Random(f"{seed}:{label}")


def clears(a: int, params: SchemeParams) -> bool:
    d = params.delta
    return a >= 1 + d and abs(a - params.n1) >= d and abs(a - params.n2) >= d


def eligible_rows(expansion: ExpandedProduct, params: SchemeParams) -> list[int]:
    return [
        i for i, term in enumerate(expansion.terms) if sum(clears(a, params) for a in term.args) >= 2
    ]


def split_row(row_id: int, term: Term, params: SchemeParams, rng: random.Random) -> SplitRow:
    """Secret part: about half the factors, at least two, drawn from clearing args."""
    clearing = [i for i, a in enumerate(term.args) if clears(a, params)]
    if len(clearing) < 2:
        raise ValueError(f"row {row_id} has fewer than two arguments clearing delta")
    k = min(len(clearing), max(2, len(term.args) // 2))
    chosen = set(rng.sample(clearing, k))
    secret = tuple(sorted(a for i, a in enumerate(term.args) if i in chosen))
    public = tuple(sorted(a for i, a in enumerate(term.args) if i not in chosen))
    return SplitRow(row_id, secret, public)


def split_any(row_id: int, term: Term, rng: random.Random) -> SplitRow:
    """Unconstrained split into two halves; used for rows nobody holds."""
    k = len(term.args) // 2
    chosen = set(rng.sample(range(len(term.args)), k))
    first = tuple(sorted(a for i, a in enumerate(term.args) if i in chosen))
    second = tuple(sorted(a for i, a in enumerate(term.args) if i not in chosen))
    return SplitRow(row_id, first, second)


def value_of(args: Args, base: BaseSet, alpha: int) -> int:
    return evaluate_term(Term(args), base, alpha)


def masked_target(n1: int, n2: int, alpha: int, base: BaseSet) -> int:
    left = count_unrestricted(base, n1) - count_bounded(base, alpha, n1)
    right = count_unrestricted(base, n2) - count_bounded(base, alpha, n2)
    return left * right


def build_expansion(params: SchemeParams) -> ExpandedProduct:
    params.validate()
    return expand_pair_product(params.n1, params.n2, params.alpha)


def candidate_base_set(round_seed: int, attempt: int, params: SchemeParams) -> BaseSet:
    return BaseSet.seeded_random(
        splitmix64(round_seed, attempt + 1), params.base_density, params.max_element
    )


def sample_base_set(
    round_seed: int, params: SchemeParams, viable: Callable[[BaseSet], bool]
) -> tuple[BaseSet, int]:
    """First viable candidate for this round and the number of attempts used."""
    for attempt in range(params.max_retries):
        base = candidate_base_set(round_seed, attempt, params)
        if viable(base):
            return base, attempt + 1
    raise NoViableBaseSet(f"no viable base set after {params.max_retries} attempts")
