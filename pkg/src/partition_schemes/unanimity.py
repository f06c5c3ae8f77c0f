"""Unanimity vote that hides how many decision-makers take part.

Setup is the ballot setup.  Each round, every decision-maker computes ``V_s``;
an objector replaces it by a random different value.  The public only sees
the combined total and the target, so a mismatch reveals that somebody objected
but not who, nor how many voters there are.  Two objectors can cancel each
other out, so passing every round is evidence of consent, not proof.

Objectors may later publish a :class:`DisagreementProof` with their original
values and every shared value they saw; anyone can then redo the sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .ballot import BallotSetupResult, ballot_setup, complement_sum, compute_voter_value
from .partitions import BaseSet
from .scheme import SchemeParams, masked_target, rng_for, sample_base_set
from .transcript import Transcript

COMMISSION = "commission"
DECIDERS = "decision-makers"
PUBLIC = "public"
DEFAULT_WINDOW = 1 << 16


@dataclass
class UnanimityRound:
    index: int
    base_set: BaseSet
    true_values: list[int]
    shared_values: list[int]
    deltas: dict[int, int]  # debug channel only
    total: int
    target: int
    passed: bool


def perturb(value: int, rng, window: int = DEFAULT_WINDOW) -> int:
    """Uniform over ``[value - window, value + window]`` without ``value``."""
    offset = rng.randrange(-window, window)
    return value + (offset if offset < 0 else offset + 1)


def run_unanimity_round(
    result: BallotSetupResult,
    objectors: Sequence[int],
    round_seed: int,
    round_index: int = 0,
    transcript: Optional[Transcript] = None,
    private: Optional[Transcript] = None,
    forced_deltas: Optional[Mapping[int, int]] = None,
    window: int = DEFAULT_WINDOW,
) -> UnanimityRound:
    """One round; ``forced_deltas`` overrides the random perturbation per objector."""
    setup = result.setup
    params = setup.params
    alpha = params.alpha
    base, attempts = sample_base_set(round_seed, params, setup.viable)
    target = masked_target(params.n1, params.n2, alpha, base)
    pairs = setup.v_values(base)
    u_values = setup.u_values(base)
    if transcript is not None:
        transcript.append(COMMISSION, "base_set", round=round_index, base_set=str(base), attempts=attempts)
        transcript.append(COMMISSION, "published_complements", round=round_index, u=u_values)

    rng = rng_for(round_seed, "objectors")
    true_values = [compute_voter_value(sh, pairs[sh.s], base, alpha) for sh in result.shares]
    shared = list(true_values)
    deltas = {}
    for s in sorted(set(objectors)):
        if forced_deltas is not None and s in forced_deltas:
            shared[s] = true_values[s] + forced_deltas[s]
        else:
            shared[s] = perturb(true_values[s], rng, window)
        deltas[s] = shared[s] - true_values[s]
    if private is not None:
        private.append(COMMISSION, "complement_pairs", round=round_index, v_pairs=[list(p) for p in pairs])
        private.append(DECIDERS, "shared_values", round=round_index, values=shared)

    total = sum(shared) + complement_sum(result.public["u_prime"], u_values, base, alpha)
    passed = total == target
    if transcript is not None:
        transcript.append(DECIDERS, "perturbed_share_sum", round=round_index, total=total)
        transcript.append(COMMISSION, "target", round=round_index, target=target)
        transcript.append(PUBLIC, "round_verdict", round=round_index, passed=passed)
    return UnanimityRound(round_index, base, true_values, shared, deltas, total, target, passed)


@dataclass
class UnanimitySession:
    result: BallotSetupResult
    transcript: Transcript
    private: Transcript  # decision-makers only
    rounds: list[UnanimityRound]
    verdict: str
    debug: list[dict] = field(default_factory=list)


def run_unanimity_session(
    params: SchemeParams,
    objectors: Sequence[int] = (),
    forced_deltas: Optional[Mapping[int, int]] = None,
    window: int = DEFAULT_WINDOW,
    result: Optional[BallotSetupResult] = None,
) -> UnanimitySession:
    for s in objectors:
        if not 0 <= s < params.r:
            raise ValueError(f"objector index {s} out of range")
    result = result or ballot_setup(params, label="unanimity-setup")
    transcript = Transcript()
    private = Transcript()
    transcript.append(COMMISSION, "setup_public", alpha=params.alpha, u_prime=result.public["u_prime"])
    rng = rng_for(params.rng_seed, "unanimity-rounds")
    rounds = []
    for index in range(params.rounds):
        rounds.append(
            run_unanimity_round(
                result, objectors, rng.getrandbits(64), index, transcript, private, forced_deltas, window
            )
        )
    verdict = "unanimous" if all(r.passed for r in rounds) else "objection_detected"
    transcript.append(PUBLIC, "unanimity_verdict", verdict=verdict)
    debug = [{"round": r.index, "deltas": dict(r.deltas)} for r in rounds]
    return UnanimitySession(result, transcript, private, rounds, verdict, debug)


@dataclass(frozen=True)
class DisagreementProof:
    round: int
    originals: Mapping[int, int]  # objector -> true V_s
    shared: tuple[int, ...]  # every value shared that round

    def to_payload(self) -> dict:
        return {
            "round": self.round,
            "originals": [[s, v] for s, v in sorted(self.originals.items())],
            "shared": list(self.shared),
        }


def prove_disagreement(session: UnanimitySession, objectors: Sequence[int], round_index: int) -> DisagreementProof:
    """Built from what the objectors know: their own true values and the shared ones."""
    record = session.rounds[round_index]
    shared = session.private.one("shared_values", round=round_index).payload["values"]
    originals = {s: record.true_values[s] for s in objectors}
    return DisagreementProof(round_index, originals, tuple(shared))


def verify_disagreement_proof(proof: DisagreementProof, transcript: Transcript) -> bool:
    """Check the proof against public messages of the named round only."""
    try:
        base = BaseSet.parse(transcript.one("base_set", round=proof.round).payload["base_set"])
        u_values = transcript.one("published_complements", round=proof.round).payload["u"]
        total = transcript.one("perturbed_share_sum", round=proof.round).payload["total"]
        target = transcript.one("target", round=proof.round).payload["target"]
        setup = transcript.one("setup_public").payload
    except LookupError:
        return False
    if not proof.originals:
        return False
    if any(not 0 <= s < len(proof.shared) for s in proof.originals):
        return False
    public_part = complement_sum(setup["u_prime"], u_values, base, setup["alpha"])
    if sum(proof.shared) + public_part != total:
        return False
    if any(proof.shared[s] == v for s, v in proof.originals.items()):
        return False
    restored = list(proof.shared)
    for s, v in proof.originals.items():
        restored[s] = v
    return sum(restored) + public_part == target
