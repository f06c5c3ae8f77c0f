"""Secret ballot among ``r`` decision-makers run by an election commission.

The commission picks ``2r`` rows ``E`` of the masked expansion.  Voter ``s``
privately holds the secret halves ``v'`` of rows ``E[s]`` and ``E[r+s]``; the
halves ``u'`` of all other rows are published symbolically.  On a round base
set the commission announces the remaining factor values, each voter computes

    V_s = v'_{E[s]} * v_{E[s]} + v'_{E[r+s]} * v_{E[r+s]}

and shares ``W_s = V_s + vote``.  Since the row split covers the expansion,

    y = sum(W) + sum(u' * u) - target

is the number of ayes.  A table of hashes of every fair ``W`` lets the public
detect votes outside ``{0, 1}`` without learning who voted how.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Optional, Sequence

from .errors import InfeasibleDistribution, TableTooLarge, TallyOutOfRange
from .identity import ExpandedProduct
from .partitions import BaseSet
from .scheme import (
    Args,
    SchemeParams,
    SplitRow,
    build_expansion,
    eligible_rows,
    masked_target,
    rng_for,
    sample_base_set,
    split_any,
    split_row,
    value_of,
)
from .transcript import Transcript

COMMISSION = "commission"
VOTERS = "voters"
PUBLIC = "public"
DEFAULT_TABLE_CEILING = 24


def voter_role(s: int) -> str:
    return f"voter:{s}"


@dataclass(frozen=True)
class BallotSetup:
    params: SchemeParams
    expansion: ExpandedProduct
    E: tuple[int, ...]
    complement_rows: tuple[int, ...]  # E^c, in public order
    splits: Mapping[int, SplitRow]

    @property
    def r(self) -> int:
        return self.params.r

    def voter_rows(self, s: int) -> tuple[int, int]:
        return self.E[s], self.E[self.r + s]

    def v_values(self, base: BaseSet) -> list[tuple[int, int]]:
        alpha = self.params.alpha
        return [
            tuple(value_of(self.splits[rid].public_args, base, alpha) for rid in self.voter_rows(s))
            for s in range(self.r)
        ]

    def u_prime_args(self) -> list[Args]:
        return [self.splits[rid].secret_args for rid in self.complement_rows]

    def u_values(self, base: BaseSet) -> list[int]:
        alpha = self.params.alpha
        return [value_of(self.splits[rid].public_args, base, alpha) for rid in self.complement_rows]

    def viable(self, base: BaseSet) -> bool:
        alpha = self.params.alpha
        for rid in self.E:
            split = self.splits[rid]
            if value_of(split.secret_args, base, alpha) == 0:
                return False
            if value_of(split.public_args, base, alpha) == 0:
                return False
        return True


@dataclass(frozen=True)
class VoterShare:
    s: int
    rows: tuple[tuple[int, Args], tuple[int, Args]]  # (row id, v' args) twice


@dataclass
class BallotSetupResult:
    setup: BallotSetup
    shares: list[VoterShare]
    public: dict


def ballot_setup(params: SchemeParams, label: str = "ballot-setup") -> BallotSetupResult:
    expansion = build_expansion(params)
    eligible = eligible_rows(expansion, params)
    if len(eligible) < 2 * params.r + 1:
        raise InfeasibleDistribution(
            f"{len(eligible)} rows clear delta={params.delta}; {2 * params.r + 1} needed for r={params.r}"
        )
    rng = rng_for(params.rng_seed, label)
    E = tuple(rng.sample(eligible, 2 * params.r))
    in_E = set(E)
    complement_rows = tuple(i for i in range(len(expansion.terms)) if i not in in_E)
    splits = {}
    for rid in E:
        splits[rid] = split_row(rid, expansion.terms[rid], params, rng)
    for rid in complement_rows:
        splits[rid] = split_any(rid, expansion.terms[rid], rng)
    setup = BallotSetup(params, expansion, E, complement_rows, splits)
    shares = [
        VoterShare(s, tuple((rid, splits[rid].secret_args) for rid in setup.voter_rows(s)))
        for s in range(params.r)
    ]
    public = {"alpha": params.alpha, "u_prime": [list(a) for a in setup.u_prime_args()]}
    return BallotSetupResult(setup, shares, public)


def select_ballot_base_set(setup: BallotSetup, seed: int) -> tuple[BaseSet, int]:
    """Resample until every voter's rows evaluate to nonzero factors."""
    return sample_base_set(seed, setup.params, setup.viable)


def compute_voter_value(share: VoterShare, pair: Sequence[int], base: BaseSet, alpha: int) -> int:
    (_, first), (_, second) = share.rows
    return value_of(first, base, alpha) * pair[0] + value_of(second, base, alpha) * pair[1]


def cast_vote(value: int, vote: int) -> int:
    return value + vote


def complement_sum(u_prime: Sequence[Args], u_values: Sequence[int], base: BaseSet, alpha: int) -> int:
    return sum(value_of(tuple(args), base, alpha) * u for args, u in zip(u_prime, u_values))


@dataclass(frozen=True)
class TallyResult:
    y: int
    nays: int


def tally_ballot(W: Sequence[int], setup: BallotSetup, base: BaseSet, target: int) -> TallyResult:
    alpha = setup.params.alpha
    y = sum(W) + complement_sum(setup.u_prime_args(), setup.u_values(base), base, alpha) - target
    if not 0 <= y <= setup.r:
        raise TallyOutOfRange(y, setup.r)
    return TallyResult(y, setup.r - y)


# -- fraud inspection ----------------------------------------------------------


@dataclass(frozen=True)
class HashSpec:
    """Hash of an integer vector.

    Entries are encoded as a sign byte, a 4-byte big-endian length and the
    big-endian magnitude, joined by ``0xff``.  The digest is read as an
    unsigned big-endian integer.
    """

    algorithm: str = "sha256"
    delimiter: bytes = b"\xff"

    def encode(self, vector: Sequence[int]) -> bytes:
        chunks = []
        for x in vector:
            x = int(x)
            mag = abs(x)
            body = mag.to_bytes((mag.bit_length() + 7) // 8, "big")
            chunks.append((b"\x01" if x < 0 else b"\x00") + len(body).to_bytes(4, "big") + body)
        return self.delimiter.join(chunks)

    def __call__(self, vector: Sequence[int]) -> int:
        digest = hashlib.new(self.algorithm, self.encode(vector)).digest()
        return int.from_bytes(digest, "big")


def publish_fair_vote_table(
    V: Sequence[int], h: HashSpec = HashSpec(), ceiling: int = DEFAULT_TABLE_CEILING
) -> frozenset:
    if len(V) > ceiling:
        raise TableTooLarge(f"r={len(V)} exceeds table ceiling {ceiling}")
    return frozenset(h([v + w for v, w in zip(V, ws)]) for ws in product((0, 1), repeat=len(V)))


def check_vote_hash(W: Sequence[int], table, h: HashSpec = HashSpec()) -> str:
    return "fair" if h(W) in table else "fraudulent"


# -- session -------------------------------------------------------------------


@dataclass
class BallotSession:
    result: BallotSetupResult
    transcript: Transcript  # public bulletin board
    voters_channel: Transcript  # shared among decision-makers only
    base_set: BaseSet
    V: list[int]
    W: list[int]
    target: int
    tally: Optional[TallyResult]
    inspection: Optional[str]


def run_ballot_session(
    params: SchemeParams,
    votes: Sequence[int],
    item: int = 0,
    inspect: bool = True,
    h: HashSpec = HashSpec(),
    result: Optional[BallotSetupResult] = None,
) -> BallotSession:
    if len(votes) != params.r:
        raise ValueError(f"expected {params.r} votes, got {len(votes)}")
    result = result or ballot_setup(params)
    setup = result.setup
    alpha = params.alpha
    public = Transcript()
    voters = Transcript()
    public.append(COMMISSION, "setup_public", r=params.r, **result.public)

    round_seed = rng_for(params.rng_seed, f"ballot-item{item}").getrandbits(64)
    base, attempts = select_ballot_base_set(setup, round_seed)
    public.append(COMMISSION, "base_set", item=item, base_set=str(base), attempts=attempts)
    target = masked_target(params.n1, params.n2, alpha, base)
    pairs = setup.v_values(base)
    u_values = setup.u_values(base)
    public.append(
        COMMISSION, "published_pairs", item=item, v_pairs=[list(p) for p in pairs], u=u_values
    )

    V = [compute_voter_value(share, pairs[share.s], base, alpha) for share in result.shares]
    W = [cast_vote(v, w) for v, w in zip(V, votes)]
    for s, w_s in enumerate(W):
        voters.append(voter_role(s), "share_w", item=item, W=w_s)

    inspection = None
    table = None
    if inspect:
        table = publish_fair_vote_table(V, h)
        public.append(COMMISSION, "fair_table", item=item, hashes=sorted(f"{x:064x}" for x in table))

    final = sum(W) + complement_sum(result.public["u_prime"], u_values, base, alpha)
    public.append(VOTERS, "vote_sum", item=item, total=final)
    public.append(COMMISSION, "target", item=item, target=target)
    if inspect:
        public.append(VOTERS, "vote_hash", item=item, hash=f"{h(W):064x}")
        inspection = check_vote_hash(W, table, h)
        public.append(PUBLIC, "inspection", item=item, verdict=inspection)

    try:
        tally = tally_ballot(W, setup, base, target)
        public.append(PUBLIC, "tally", item=item, y=tally.y, nays=tally.nays)
    except TallyOutOfRange as exc:
        tally = None
        public.append(PUBLIC, "tally", item=item, error="out_of_range", y=exc.y)
    return BallotSession(result, public, voters, base, V, W, target, tally, inspection)
