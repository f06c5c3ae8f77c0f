from collections import Counter
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partition_schemes.errors import NoNontrivialRows
from partition_schemes.identity import (
    SolutionMatrix,
    Term,
    build_identity,
    enumerate_solutions,
    evaluate_term,
    expand_pair_product,
    verify_identity,
)
from partition_schemes.partitions import BaseSet, count_bounded, count_unrestricted, enumerate_partitions

# the fourteen products printed for n=10, alpha=1
PAPER_TERMS_10_1 = [
    (1, 1), (1, 2), (1, 3), (5,), (2, 2, 1), (2, 4), (2, 1), (2, 2),
    (4, 1, 1), (4, 3), (6, 2), (6, 1), (8, 1), (10,),
]

random_sets = st.builds(
    BaseSet.seeded_random,
    st.integers(0, 2**64 - 1),
    st.fractions(min_value=Fraction(1, 5), max_value=1),
    st.integers(1, 80),
)


def count_representations(n, base):
    """Independent oracle: ways to write n as a sum of powers of ``base``."""

    @lru_cache(maxsize=None)
    def ways(remaining, power):
        # representations of ``remaining`` using only powers >= ``power``
        if remaining == 0:
            return 1
        if power > remaining:
            return 0
        return sum(ways(remaining - k * power, power * base) for k in range(remaining // power + 1))

    return ways(n, 1)


def brute_rows(n, alpha):
    """Every coefficient vector by nested search (small n only)."""
    base = alpha + 1
    powers = [1]
    while powers[-1] * base <= n:
        powers.append(powers[-1] * base)
    rows = []

    def go(i, remaining, acc):
        if i == len(powers):
            if remaining == 0:
                row = list(acc)
                while len(row) > 1 and row[-1] == 0:
                    row.pop()
                rows.append(tuple(row))
            return
        for c in range(remaining // powers[i] + 1):
            go(i + 1, remaining - c * powers[i], acc + [c])

    go(0, n, [])
    return rows


def test_representation_oracle_sanity():
    # binary partitions: 1, 2, 2, 4, 4, 6, 6, 10, 10, 14 for n = 1..10
    assert [count_representations(n, 2) for n in range(1, 11)] == [1, 2, 2, 4, 4, 6, 6, 10, 10, 14]


def test_solutions_examples():
    assert len(enumerate_solutions(10, 1)) == 14
    for alpha in (1, 2, 7):
        assert enumerate_solutions(1, alpha).rows == ((1,),)
    assert set(enumerate_solutions(3, 2).rows) == {(3,), (0, 1)}


@pytest.mark.parametrize("alpha", [1, 2, 3, 4])
def test_solution_rows_complete_and_ordered(alpha):
    for n in range(1, 61):
        matrix = enumerate_solutions(n, alpha)
        assert len(matrix) == count_representations(n, alpha + 1)
        assert len(set(matrix.rows)) == len(matrix)
        assert matrix.rows.count((n,)) == 1
        for row in matrix.rows:
            assert sum(u * (alpha + 1) ** i for i, u in enumerate(row)) == n
        width = max(len(r) for r in matrix.rows)
        keys = [tuple(reversed(r + (0,) * (width - len(r)))) for r in matrix.rows]
        assert keys == sorted(keys, reverse=True)
        if n <= 30:
            assert sorted(matrix.rows) == sorted(brute_rows(n, alpha))


def test_matrix_text_roundtrip():
    for n, alpha in [(10, 1), (27, 2), (1, 3)]:
        matrix = enumerate_solutions(n, alpha)
        text = matrix.to_text()
        again = SolutionMatrix.from_text(text)
        assert again == matrix
        assert again.to_text() == text


def test_identity_10_1_matches_worked_example():
    identity = build_identity(10, 1)
    got = Counter(t.args for t in identity.terms)
    want = Counter(tuple(sorted(t)) for t in PAPER_TERMS_10_1)
    assert got == want


def test_identity_small_cases():
    assert [t.args for t in build_identity(5, 5).terms] == [(5,)]
    assert [t.args for t in build_identity(4, 9).terms] == [(4,)]
    assert Counter(t.args for t in build_identity(3, 2).terms) == Counter([(3,), (1,)])


def test_verify_identity_examples():
    primes = verify_identity(10, 1, BaseSet.primes())
    assert (primes.lhs, primes.rhs, primes.equal) == (5, 5, True)
    odds = verify_identity(10, 1, BaseSet.odds())
    assert (odds.lhs, odds.rhs, odds.equal) == (10, 10, True)
    base = BaseSet.seeded_random(7, Fraction(1, 2), 100)
    report = verify_identity(10, 1, base)
    assert report.equal
    assert report.lhs == len(enumerate_partitions(base, None, 10)) == 19


def test_evaluate_term_examples():
    assert evaluate_term(Term((5,)), BaseSet.primes(), 1) == 2
    assert evaluate_term(Term((2, 2)), BaseSet.primes(), 1) == 1
    assert evaluate_term(Term(()), BaseSet.naturals(), 3) == 1
    assert Term((0, 3, 0, 1)).args == (1, 3)


@given(random_sets, st.integers(1, 40), st.integers(1, 4))
def test_identity_holds_on_random_sets(base, n, alpha):
    assert verify_identity(n, alpha, base).equal


@given(random_sets, st.integers(1, 40), st.integers(1, 4))
def test_dropping_trivial_row_leaves_masked_difference(base, n, alpha):
    identity = build_identity(n, alpha)
    rest = sum(evaluate_term(t, base, alpha) for t in identity.terms if t.args != (n,))
    assert rest == count_unrestricted(base, n) - count_bounded(base, alpha, n)


def test_expand_pair_product_counts_and_provenance():
    expansion = expand_pair_product(10, 10, 1)
    assert len(expansion.terms) == 169
    assert expansion.evaluate(BaseSet.primes()) == (5 - 2) * (5 - 2)
    left = build_identity(10, 1).terms
    for term in expansion.terms:
        i, j = term.provenance
        assert left[i].args != (10,) and left[j].args != (10,)
        assert Counter(term.args) == Counter(left[i].args) + Counter(left[j].args)
    assert len({t.provenance for t in expansion.terms}) == 169


def test_expand_needs_nontrivial_rows():
    with pytest.raises(NoNontrivialRows):
        expand_pair_product(2, 10, 2)
    with pytest.raises(NoNontrivialRows):
        expand_pair_product(10, 1, 1)


@given(
    random_sets,
    st.integers(2, 30),
    st.integers(2, 30),
    st.integers(1, 3),
)
def test_expansion_soundness(base, n1, n2, alpha):
    if min(n1, n2) < alpha + 1:
        return
    expansion = expand_pair_product(n1, n2, alpha)
    left = count_unrestricted(base, n1) - count_bounded(base, alpha, n1)
    right = count_unrestricted(base, n2) - count_bounded(base, alpha, n2)
    assert expansion.evaluate(base) == left * right
    rows = lambda n: len(enumerate_solutions(n, alpha)) - 1
    assert len(expansion.terms) == rows(n1) * rows(n2)
