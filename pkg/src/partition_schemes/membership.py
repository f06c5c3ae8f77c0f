"""Membership verification among ``r`` members and a dealer.

The dealer expands the masked product, hands each member secret sub-products
of some rows, and in every round announces, on a fresh random base set, the
complement value of each distributed row plus the full value of each withheld
row.  The round passes iff

    sum(member value * complement) + sum(withheld values) == target.

A failed session ends with the dealer revealing the true values so the members
can name whoever answered wrongly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .errors import InfeasibleDistribution, NotRejected
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
    split_row,
    value_of,
)
from .transcript import Transcript

DEALER = "dealer"
PUBLIC = "public"


def member_role(member: int) -> str:
    return f"member:{member}"


@dataclass(frozen=True)
class Share:
    member_id: int
    rows: tuple[tuple[int, Args], ...]  # (row id, secret args)

    def true_values(self, base: BaseSet, alpha: int) -> dict[int, int]:
        return {row_id: value_of(args, base, alpha) for row_id, args in self.rows}


@dataclass(frozen=True)
class DealerSecret:
    params: SchemeParams
    expansion: ExpandedProduct
    splits: Mapping[int, SplitRow]
    assignment: Mapping[int, tuple[int, ...]]
    withheld: tuple[int, ...]

    def complement_values(self, base: BaseSet) -> dict[int, int]:
        alpha = self.params.alpha
        return {rid: value_of(s.public_args, base, alpha) for rid, s in self.splits.items()}

    def withheld_values(self, base: BaseSet) -> list[int]:
        alpha = self.params.alpha
        return [value_of(self.expansion.terms[rid].args, base, alpha) for rid in self.withheld]

    def viable(self, base: BaseSet) -> bool:
        alpha = self.params.alpha
        for split in self.splits.values():
            if value_of(split.secret_args, base, alpha) == 0:
                return False
            if value_of(split.public_args, base, alpha) == 0:
                return False
        return True


@dataclass
class MembershipSetup:
    secret: DealerSecret
    shares: list[Share]
    public: dict


def membership_setup(params: SchemeParams) -> MembershipSetup:
    expansion = build_expansion(params)
    eligible = eligible_rows(expansion, params)
    if len(eligible) < params.r:
        raise InfeasibleDistribution(
            f"{len(eligible)} rows clear delta={params.delta}, need one per member ({params.r})"
        )
    rng = rng_for(params.rng_seed, "membership-setup")
    count = max(params.r, round(params.distribute_ratio * len(eligible)))
    chosen = sorted(rng.sample(eligible, min(count, len(eligible))))
    order = chosen[:]
    rng.shuffle(order)
    assignment: dict[int, list[int]] = {m: [] for m in range(params.r)}
    for k, rid in enumerate(order):
        assignment[k % params.r].append(rid)
    splits = {rid: split_row(rid, expansion.terms[rid], params, rng) for rid in chosen}
    chosen_set = set(chosen)
    withheld = tuple(i for i in range(len(expansion.terms)) if i not in chosen_set)
    secret = DealerSecret(
        params,
        expansion,
        splits,
        {m: tuple(sorted(rows)) for m, rows in assignment.items()},
        withheld,
    )
    shares = [
        Share(m, tuple((rid, splits[rid].secret_args) for rid in secret.assignment[m]))
        for m in range(params.r)
    ]
    return MembershipSetup(secret, shares, {"alpha": params.alpha})


# -- member behaviours -------------------------------------------------------


@dataclass
class Honest:
    def respond(self, share, base, alpha, round_index, rng):
        return share.true_values(base, alpha)


@dataclass
class ConstantOffset:
    offset: int = 1

    def respond(self, share, base, alpha, round_index, rng):
        return {rid: v + self.offset for rid, v in share.true_values(base, alpha).items()}


@dataclass
class RandomValue:
    def respond(self, share, base, alpha, round_index, rng):
        out = {}
        for rid, v in share.true_values(base, alpha).items():
            guess = rng.randrange(0, max(2 * v, 16))
            out[rid] = guess if guess != v else guess + 1
        return out


@dataclass
class ReplayPrevious:
    """Computes once, then keeps resending the first round's answers."""

    _last: Optional[dict] = field(default=None, repr=False)

    def respond(self, share, base, alpha, round_index, rng):
        if self._last is None:
            self._last = share.true_values(base, alpha)
        return dict(self._last)


@dataclass
class Impostor:
    """A party without a share who replays answers seen in another session."""

    observed: Optional[Transcript] = None
    posing_as: int = 0

    def respond(self, share, base, alpha, round_index, rng):
        seen = []
        if self.observed is not None:
            seen = self.observed.of_kind("response", member=self.posing_as)
        if not seen:
            return {rid: 0 for rid, _ in share.rows}
        rec = seen[min(round_index, len(seen) - 1)]
        return {rid: v for rid, v in rec.payload["values"]}


Behavior = Union[Honest, ConstantOffset, RandomValue, ReplayPrevious, Impostor]


def parse_behavior(text: str) -> Behavior:
    name, _, arg = text.strip().partition(":")
    if name == "honest":
        return Honest()
    if name == "offset":
        return ConstantOffset(int(arg) if arg else 1)
    if name == "random":
        return RandomValue()
    if name == "replay":
        return ReplayPrevious()
    if name == "impostor":
        return Impostor()
    raise ValueError(f"unknown behaviour {text!r}")


# -- rounds and sessions -----------------------------------------------------


@dataclass
class RoundRecord:
    index: int
    base_set: BaseSet
    attempts: int
    complements: dict[int, int]
    withheld_values: list[int]
    responses: dict[int, dict[int, int]]
    combined: int
    target: int
    passed: bool


def combine(responses, complements, withheld_values) -> int:
    total = sum(withheld_values)
    for values in responses.values():
        for rid, v in values.items():
            total += v * complements.get(rid, 0)
    return total


def membership_round(
    secret: DealerSecret,
    shares: list[Share],
    round_seed: int,
    behaviors: Optional[Mapping[int, Behavior]] = None,
    round_index: int = 0,
    transcript: Optional[Transcript] = None,
    rngs: Optional[Mapping[int, random.Random]] = None,
) -> RoundRecord:
    params = secret.params
    alpha = params.alpha
    behaviors = behaviors or {}
    base, attempts = sample_base_set(round_seed, params, secret.viable)
    if transcript is not None:
        transcript.append(DEALER, "base_set", round=round_index, base_set=str(base), attempts=attempts)

    responses = {}
    for share in shares:
        behavior = behaviors.get(share.member_id, Honest())
        rng = (rngs or {}).get(share.member_id) or rng_for(round_seed, f"member{share.member_id}")
        values = behavior.respond(share, base, alpha, round_index, rng)
        responses[share.member_id] = values
        if transcript is not None:
            transcript.append(
                member_role(share.member_id),
                "response",
                round=round_index,
                member=share.member_id,
                values=[[rid, v] for rid, v in sorted(values.items())],
            )

    complements = secret.complement_values(base)
    withheld_values = secret.withheld_values(base)
    combined = combine(responses, complements, withheld_values)
    target = masked_target(params.n1, params.n2, alpha, base)
    passed = combined == target
    if transcript is not None:
        transcript.append(
            DEALER,
            "dealer_values",
            round=round_index,
            complements=[[rid, v] for rid, v in sorted(complements.items())],
            withheld=withheld_values,
        )
        transcript.append("members", "combined", round=round_index, combined=combined)
        transcript.append(DEALER, "target", round=round_index, target=target)
        transcript.append(PUBLIC, "round_verdict", round=round_index, passed=passed)
    return RoundRecord(
        round_index, base, attempts, complements, withheld_values, responses, combined, target, passed
    )


@dataclass
class MembershipSession:
    setup: MembershipSetup
    transcript: Transcript
    rounds: list[RoundRecord]
    verdict: str
    cheaters: frozenset = frozenset()


def run_membership_session(
    params: SchemeParams,
    behaviors: Optional[Mapping[int, Behavior]] = None,
    setup: Optional[MembershipSetup] = None,
    session_seed: Optional[int] = None,
) -> MembershipSession:
    """``session_seed`` (default ``params.rng_seed``) drives round base sets only."""
    setup = setup or membership_setup(params)
    if session_seed is None:
        session_seed = params.rng_seed
    transcript = Transcript()
    transcript.append(DEALER, "setup_public", **setup.public)
    session_rng = rng_for(session_seed, "membership-rounds")
    member_rngs = {m: rng_for(session_seed, f"member{m}") for m in range(params.r)}
    rounds = []
    for index in range(params.rounds):
        round_seed = session_rng.getrandbits(64)
        rounds.append(
            membership_round(
                setup.secret, setup.shares, round_seed, behaviors, index, transcript, member_rngs
            )
        )
    verdict = "accept" if all(r.passed for r in rounds) else "reject"
    transcript.append(PUBLIC, "session_verdict", verdict=verdict)
    cheaters = frozenset()
    if verdict == "reject":
        for record in rounds:
            true = {}
            for share in setup.shares:
                true.update(share.true_values(record.base_set, params.alpha))
            transcript.append(
                DEALER,
                "revealed_values",
                round=record.index,
                values=[[rid, v] for rid, v in sorted(true.items())],
            )
        cheaters = identify_cheaters(transcript, setup.secret)
        transcript.append(PUBLIC, "cheaters", members=sorted(cheaters))
    return MembershipSession(setup, transcript, rounds, verdict, cheaters)


def identify_cheaters(transcript: Transcript, secret: DealerSecret) -> frozenset:
    """Members whose reported values differ from the dealer's recomputation."""
    verdicts = transcript.of_kind("session_verdict")
    if not verdicts or verdicts[-1].payload["verdict"] != "reject":
        raise NotRejected("cheater identification needs a rejected session")
    alpha = secret.params.alpha
    cheaters = set()
    for rec in transcript.of_kind("base_set"):
        base = BaseSet.parse(rec.payload["base_set"])
        index = rec.payload["round"]
        for resp in transcript.of_kind("response", round=index):
            member = resp.payload["member"]
            reported = {rid: v for rid, v in resp.payload["values"]}
            expected = {
                rid: value_of(secret.splits[rid].secret_args, base, alpha)
                for rid in secret.assignment[member]
            }
            if reported != expected:
                cheaters.add(member)
    return frozenset(cheaters)


def replay_verdict(transcript: Transcript) -> str:
    """Recompute every round from public messages alone."""
    passed = []
    for rec in transcript.of_kind("dealer_values"):
        index = rec.payload["round"]
        complements = {rid: v for rid, v in rec.payload["complements"]}
        responses = {
            resp.payload["member"]: {rid: v for rid, v in resp.payload["values"]}
            for resp in transcript.of_kind("response", round=index)
        }
        combined = combine(responses, complements, rec.payload["withheld"])
        target = transcript.one("target", round=index).payload["target"]
        passed.append(combined == target)
    return "accept" if passed and all(passed) else "reject"
