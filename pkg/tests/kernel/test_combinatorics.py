import math
from itertools import combinations

import numpy as np
import pytest

from pyhyperdense.kernel import HdException, HdStatus
from pyhyperdense.kernel.combinatorics import (
    binomial,
    binomial_table,
    colex_rank,
    colex_rank_many,
    colex_unrank,
    colex_unrank_many,
    falling_factorial,
    kl_bernoulli,
    kl_inverse_upper,
    subset_ranks_within,
)

from ..fixtures import *

# TESTS


def test_binomial_values():
    for (n, k), expected in BINOMIAL_CASES.items():
        assert binomial(n, k) == expected


def test_binomial_overflow():
    with pytest.raises(HdException) as exc_info:
        binomial(200, 100)
    assert exc_info.value.status == HdStatus.ARITHMETIC_OVERFLOW


def test_binomial_negative_argument():
    with pytest.raises(HdException) as exc_info:
        binomial(-1, 2)
    assert exc_info.value.status == HdStatus.DOMAIN_ERROR


def test_falling_factorial_values():
    for (n, k), expected in FALLING_CASES.items():
        assert falling_factorial(n, k) == expected


def test_falling_factorial_overflow():
    with pytest.raises(HdException) as exc_info:
        falling_factorial(100, 30)
    assert exc_info.value.status == HdStatus.ARITHMETIC_OVERFLOW


def test_colex_rank_examples():
    assert colex_rank((0, 1, 2)) == 0
    assert colex_rank((0, 1, 3)) == 1
    assert colex_rank(()) == 0


def test_colex_rank_follows_colex_order():
    for rank, subset in enumerate(subsets_in_colex_order(7, 3)):
        assert colex_rank(subset) == rank
        assert colex_unrank(rank, 3) == subset


def test_colex_unrank_large_rank():
    key = (3, 50, 1000)
    assert colex_unrank(colex_rank(key), 3) == key


@pytest.mark.parametrize("key", [(1, 1), (2, 1), (0, 3, 2), (-1, 2)])
def test_colex_rank_rejects_invalid_keys(key):
    with pytest.raises(HdException) as exc_info:
        colex_rank(key)
    assert exc_info.value.status == HdStatus.INVALID_SUBSET


def test_vectorized_ranks_match_scalar():
    rows = np.array(list(combinations(range(9), 4)), dtype=np.int64)
    ranks = colex_rank_many(rows, 9)
    assert ranks.tolist() == [colex_rank(tuple(r)) for r in rows.tolist()]
    assert np.array_equal(colex_unrank_many(ranks, 4, 9), rows)


def test_vectorized_unrank_of_every_rank():
    ranks = np.arange(math.comb(8, 3))
    rows = colex_unrank_many(ranks, 3, 8)
    assert [tuple(r) for r in rows.tolist()] == subsets_in_colex_order(8, 3)


def test_subset_ranks_within():
    chosen = (6, 1, 4, 3)
    ranks = subset_ranks_within(chosen, 2, 8)
    expected = sorted(colex_rank(c) for c in combinations(sorted(chosen), 2))
    assert ranks.tolist() == expected


def test_subset_ranks_within_small_set():
    assert subset_ranks_within((1, 2), 3, 5).size == 0


def test_binomial_table_is_read_only():
    table = binomial_table(10, 3)
    assert table[10, 3] == 120
    with pytest.raises(ValueError):
        table[0, 0] = 5


def test_kl_values():
    for (p, q), expected in KL_CASES.items():
        assert kl_bernoulli(p, q) == pytest.approx(expected, abs=1e-9)


def test_kl_zero_rate_convention():
    assert kl_bernoulli(0.3, 0.0) == pytest.approx(math.log(1 / 0.7))


@pytest.mark.parametrize("p, q", [(0.0, 0.5), (1.0, 0.5), (0.5, 1.5), (0.5, -0.1)])
def test_kl_domain(p, q):
    with pytest.raises(HdException) as exc_info:
        kl_bernoulli(p, q)
    assert exc_info.value.status == HdStatus.DOMAIN_ERROR


def test_kl_inverse_examples():
    assert kl_inverse_upper(0.2, 0.0) == 0.2
    assert kl_inverse_upper(0.5, math.log(2)) == 1.0
    assert kl_inverse_upper(0.1, 0.510826) == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("p", [0.01, 0.2, 0.5, 0.9])
@pytest.mark.parametrize("t", [1e-4, 0.05, 0.3])
def test_kl_inverse_solves_equation(p, t):
    if t >= math.log(1 / p):
        pytest.skip("level beyond H_p(1)")
    q = kl_inverse_upper(p, t)
    assert p <= q < 1.0
    assert kl_bernoulli(p, q) == pytest.approx(t, abs=1e-9)


def test_kl_inverse_domain():
    with pytest.raises(HdException):
        kl_inverse_upper(0.0, 0.1)
    with pytest.raises(HdException):
        kl_inverse_upper(0.5, -1.0)


def test_pascal_rule():
    for n in range(1, 61):
        for k in range(1, n + 1):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k), (n, k)


def test_colex_rank_is_a_bijection_on_small_sets():
    for n in range(1, 11):
        for k in range(1, min(5, n) + 1):
            subsets = subsets_in_colex_order(n, k)
            assert len(subsets) == binomial(n, k)
            assert [colex_rank(s) for s in subsets] == list(range(len(subsets)))
            assert [colex_unrank(r, k) for r in range(len(subsets))] == subsets
            rows = colex_unrank_many(np.arange(len(subsets)), k, n)
            assert [tuple(int(v) for v in row) for row in rows] == subsets
            assert colex_rank_many(rows, n).tolist() == list(range(len(subsets)))


@pytest.mark.parametrize("p", np.linspace(0.05, 0.95, 19).tolist())
def test_kl_is_non_negative_and_monotone(p):
    grid = np.linspace(0.0, 1.0, 101)
    values = np.array([kl_bernoulli(p, q) for q in grid])
    assert np.all(values >= 0.0)
    assert kl_bernoulli(p, p) == 0.0
    below, above = values[grid <= p], values[grid >= p]
    assert np.all(np.diff(below) < 0)
    assert np.all(np.diff(above) > 0)


@pytest.mark.parametrize("p", [0.05, 0.2, 0.5, 0.9])
def test_kl_inverse_recovers_rate(p):
    for q in np.linspace(p, 0.99, 25)[1:]:
        assert kl_inverse_upper(p, kl_bernoulli(p, float(q))) == pytest.approx(q, abs=1e-9)
