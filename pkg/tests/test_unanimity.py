import json
import random
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partition_schemes.ballot import ballot_setup
from partition_schemes.scheme import SchemeParams
from partition_schemes.unanimity import (
    DisagreementProof,
    perturb,
    prove_disagreement,
    run_unanimity_round,
    run_unanimity_session,
    verify_disagreement_proof,
)

PARAMS = SchemeParams(19, 23, 2, r=4, rounds=5, rng_seed=21)


@pytest.fixture(scope="module")
def result():
    return ballot_setup(PARAMS, label="unanimity-setup")


def test_round_without_objectors_passes(result):
    assert run_unanimity_round(result, [], 1234).passed


def test_single_objector_fails_round(result):
    record = run_unanimity_round(result, [2], 1234)
    assert not record.passed
    assert record.deltas[2] != 0


def test_opposite_deltas_cancel(result):
    record = run_unanimity_round(result, [0, 3], 1234, forced_deltas={0: 17, 3: -17})
    assert record.passed
    assert record.shared_values != record.true_values


@given(st.integers(0, 2**64 - 1), st.integers(1, 1000))
def test_perturbation_never_keeps_value(seed, window):
    rng = random.Random(seed)
    value = rng.randrange(10**6)
    new = perturb(value, rng, window)
    assert new != value and abs(new - value) <= window


def test_sessions():
    assert run_unanimity_session(PARAMS).verdict == "unanimous"
    single = run_unanimity_session(PARAMS, [1])
    assert single.verdict == "objection_detected"
    assert not any(r.passed for r in single.rounds)
    assert single.debug[0]["deltas"].keys() == {1}


def test_two_random_objectors_detected_almost_always():
    detected = sum(
        run_unanimity_session(replace(PARAMS, rng_seed=seed), [0, 2]).verdict == "objection_detected"
        for seed in range(20)
    )
    assert detected == 20  # chance of a miss is about (1/2**17)**5 per session


def test_public_transcript_does_not_reveal_r():
    layouts = []
    for r in (3, 5):
        session = run_unanimity_session(replace(PARAMS, r=r), [0])
        for rec in session.transcript:
            assert set(rec.payload).isdisjoint({"r", "objectors", "values", "v_pairs", "deltas"})
        layouts.append([(rec.kind, sorted(rec.payload)) for rec in session.transcript])
    assert layouts[0] == layouts[1]


@pytest.fixture(scope="module")
def objection():
    return run_unanimity_session(PARAMS, [1, 3])


def test_valid_proof_verifies(objection):
    proof = prove_disagreement(objection, [1, 3], 2)
    assert verify_disagreement_proof(proof, objection.transcript)
    json.dumps(proof.to_payload())


def test_altered_original_fails(objection):
    proof = prove_disagreement(objection, [1, 3], 2)
    bad = DisagreementProof(proof.round, {**proof.originals, 1: proof.originals[1] + 1}, proof.shared)
    assert not verify_disagreement_proof(bad, objection.transcript)


def test_wrong_round_fails(objection):
    proof = prove_disagreement(objection, [1, 3], 2)
    assert not verify_disagreement_proof(replace(proof, round=3), objection.transcript)
    assert not verify_disagreement_proof(replace(proof, round=99), objection.transcript)


@given(st.integers(0, 1), st.integers(0, 3), st.integers(-50, 50).filter(bool))
def test_any_single_field_mutation_fails(objection, which, index, delta):
    proof = prove_disagreement(objection, [1, 3], 0)
    if which == 0:
        s = (1, 3)[index % 2]
        mutated = replace(proof, originals={**proof.originals, s: proof.originals[s] + delta})
    else:
        shared = list(proof.shared)
        shared[index] += delta
        mutated = replace(proof, shared=tuple(shared))
    assert not verify_disagreement_proof(mutated, objection.transcript)


def test_proof_from_non_objector_fails():
    session = run_unanimity_session(PARAMS, [1])
    assert not verify_disagreement_proof(prove_disagreement(session, [0], 0), session.transcript)
    assert verify_disagreement_proof(prove_disagreement(session, [1], 0), session.transcript)


def test_unanimous_session_has_nothing_to_prove():
    session = run_unanimity_session(PARAMS)
    assert not verify_disagreement_proof(prove_disagreement(session, [1], 0), session.transcript)


def test_objector_index_checked():
    with pytest.raises(ValueError):
        run_unanimity_session(PARAMS, [7])
