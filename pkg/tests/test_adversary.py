from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partition_schemes.adversary import (
    Observation,
    attack_recover_pair,
    enumerate_product_preimages,
    experiment_base_sets,
    observe,
    run_experiment,
)
from partition_schemes.errors import BoundTooLarge
from partition_schemes.partitions import BaseSet, count_bounded


def nested_loop_preimages(obs, bound):
    """Independent search: one count per argument, no value index."""
    return {
        (u, v)
        for u in range(1, bound + 1)
        for v in range(u, bound + 1)
        if count_bounded(obs.base, obs.alpha, u) * count_bounded(obs.base, obs.alpha, v) == obs.value
    }


random_sets = st.builds(
    BaseSet.seeded_random, st.integers(0, 2**64 - 1), st.just(Fraction(1, 2)), st.integers(5, 40)
)


def test_true_pair_is_found():
    obs = observe(7, 12, BaseSet.primes(), 1)
    assert (7, 12) in enumerate_product_preimages(obs, 30)


def test_zero_value():
    base = BaseSet.primes()
    found = enumerate_product_preimages(Observation(base, 1, 0), 12)
    zeros = {a for a in range(1, 13) if count_bounded(base, 1, a) == 0}
    assert found == {(u, v) for u in range(1, 13) for v in range(u, 13) if u in zeros or v in zeros}


def test_squares_value_one():
    found = enumerate_product_preimages(Observation(BaseSet.squares(), 1, 1), 10)
    assert (1, 1) in found
    ones = [a for a in range(1, 11) if count_bounded(BaseSet.squares(), 1, a) == 1]
    assert ones == [1, 4, 5, 9, 10]
    assert found == {(u, v) for u in ones for v in ones if u <= v}


def test_bound_ceiling():
    with pytest.raises(BoundTooLarge):
        enumerate_product_preimages(Observation(BaseSet.primes(), 1, 4), 201)


@given(random_sets, st.integers(1, 3), st.integers(0, 40))
def test_matches_nested_loop(base, alpha, value):
    obs = Observation(base, alpha, value)
    assert enumerate_product_preimages(obs, 25) == nested_loop_preimages(obs, 25)


@given(st.integers(1, 30), st.integers(1, 30), st.integers(0, 2**64 - 1), st.integers(1, 5))
def test_attack_is_sound_and_narrows(u, v, seed, k):
    bases = experiment_base_sets(seed, k, 30)
    result = attack_recover_pair([observe(u, v, b, 1) for b in bases], 30)
    assert (min(u, v), max(u, v)) in result.candidates
    assert list(result.sizes) == sorted(result.sizes, reverse=True)
    assert result.sizes[-1] == len(result.candidates)


def test_experiment_report_shape():
    report = run_experiment([(3, 5), (10, 20)], alpha=1, k=3, bound=30, seed=4)
    assert report["k"] == 3 and len(report["pairs"]) == 2
    assert all(row["contains_true"] for row in report["pairs"])
    again = run_experiment([(3, 5), (10, 20)], alpha=1, k=3, bound=30, seed=4)
    assert again["pairs"] == report["pairs"]
