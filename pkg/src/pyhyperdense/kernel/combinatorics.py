"""Exact combinatorics, colexicographic subset ranking and Bernoulli KL divergence.

All logarithms are natural.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Final, Sequence

import numpy as np
from scipy.optimize import bisect
from scipy.special import rel_entr

from pyhyperdense.kernel import INT64_MAX, HdException, HdStatus

SubsetKey = tuple[int, ...]

KL_INVERSE_XTOL: Final[float] = 1e-12
KL_INVERSE_MAX_ITER: Final[int] = 200


def _check_nonneg(**values: int) -> None:
    for name, value in values.items():
        if value < 0:
            raise HdException(HdStatus.DOMAIN_ERROR, f"'{name}' must be non-negative, got {value}!")


def _checked(value: int, what: str) -> int:
    if value > INT64_MAX:
        raise HdException(HdStatus.ARITHMETIC_OVERFLOW, f"{what} does not fit into a signed 64-bit integer!")
    return value


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k).

    Args:
        n:              Set size
        k:              Subset size

    Raises:
        HdException:    ARITHMETIC_OVERFLOW if the result exceeds 2^63 - 1

    Returns:
        int:            C(n, k), zero when k > n
    """
    _check_nonneg(n=n, k=k)
    return _checked(math.comb(n, k), f"C({n}, {k})")


def falling_factorial(n: int, k: int) -> int:
    """n * (n - 1) * ... * (n - k + 1); 1 for k = 0 and 0 for k > n."""
    _check_nonneg(n=n, k=k)
    return _checked(math.perm(n, k), f"falling factorial ({n})_{k}")


def validate_key(key: Sequence[int]) -> SubsetKey:
    """Check that 'key' is a strictly increasing sequence of non-negative ints."""
    out = tuple(int(v) for v in key)
    if out and out[0] < 0:
        raise HdException(HdStatus.INVALID_SUBSET, f"Negative vertex in {out}!")
    for prev, cur in zip(out, out[1:]):
        if cur <= prev:
            raise HdException(HdStatus.INVALID_SUBSET, f"{out} is not strictly increasing!")
    return out


def colex_rank(key: Sequence[int]) -> int:
    """Colexicographic rank of a subset: sum over j of C(s_j, j + 1).

    Raises:
        HdException:    INVALID_SUBSET for a non-increasing key
    """
    vertices = validate_key(key)
    return _checked(sum(math.comb(s, j + 1) for j, s in enumerate(vertices)), "colex rank")


def _largest_below(rank: int, j: int) -> int:
    # Largest c with C(c, j) <= rank; C(j - 1, j) = 0 always qualifies.
    lo = j - 1
    hi = j
    while math.comb(hi, j) <= rank:
        hi = 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if math.comb(mid, j) <= rank:
            lo = mid
        else:
            hi = mid
    return lo


def colex_unrank(rank: int, k: int) -> SubsetKey:
    """Inverse of 'colex_rank' for subsets of size 'k'."""
    _check_nonneg(rank=rank, k=k)
    out = [0] * k
    remaining = rank
    for j in range(k, 0, -1):
        c = _largest_below(remaining, j)
        out[j - 1] = c
        remaining -= math.comb(c, j)
    return tuple(out)


@lru_cache(maxsize=32)
def binomial_table(n_max: int, k_max: int) -> np.ndarray:
    """Read-only int64 table T[i, j] = C(i, j) for 0 <= i <= n_max, 0 <= j <= k_max."""
    rows = [[math.comb(i, j) for j in range(k_max + 1)] for i in range(n_max + 1)]
    if max(rows[n_max]) > INT64_MAX:
        raise HdException(HdStatus.ARITHMETIC_OVERFLOW, f"C({n_max}, <= {k_max}) overflows int64!")
    table = np.array(rows, dtype=np.int64)
    table.setflags(write=False)
    return table


def colex_rank_many(rows: np.ndarray, n_vertices: int) -> np.ndarray:
    """Vectorized 'colex_rank' over an (R, k) array of increasing rows."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim != 2:
        raise HdException(HdStatus.INVALID_SUBSET, "Expected a two-dimensional array of subsets!")
    k = rows.shape[1]
    table = binomial_table(n_vertices, k)
    ranks = np.zeros(rows.shape[0], dtype=np.int64)
    for j in range(k):
        ranks += table[rows[:, j], j + 1]
    return ranks


def colex_unrank_many(ranks: np.ndarray, k: int, n_vertices: int) -> np.ndarray:
    """Vectorized 'colex_unrank'; returns an (R, k) int64 array of increasing rows."""
    remaining = np.array(ranks, dtype=np.int64, copy=True)
    table = binomial_table(n_vertices, k)
    out = np.empty((remaining.shape[0], k), dtype=np.int64)
    for j in range(k, 0, -1):
        column = table[:n_vertices, j]
        c = np.searchsorted(column, remaining, side="right") - 1
        out[:, j - 1] = c
        remaining -= column[c]
    return out


def subset_ranks_within(vertices: Sequence[int], k: int, n_vertices: int) -> np.ndarray:
    """Colex ranks of every k-subset of the given vertex set, in colex order.

    The k-subsets of {0..n-1} are exactly the ranks below C(n, k), so the
    subsets of an arbitrary set are obtained by relabeling those.
    """
    chosen = np.array(sorted(set(int(v) for v in vertices)), dtype=np.int64)
    if chosen.size < k:
        return np.empty(0, dtype=np.int64)
    local = colex_unrank_many(np.arange(math.comb(chosen.size, k), dtype=np.int64), k, int(chosen.size))
    return colex_rank_many(chosen[local], n_vertices)


def _check_probability(name: str, value: float, *, open_low: bool, open_high: bool) -> None:
    low_ok = value > 0.0 if open_low else value >= 0.0
    high_ok = value < 1.0 if open_high else value <= 1.0
    if not (low_ok and high_ok) or math.isnan(value):
        raise HdException(HdStatus.DOMAIN_ERROR, f"'{name}'={value} is outside its allowed range!")


def kl_bernoulli(p: float, q: float) -> float:
    """Kullback-Leibler divergence H_p(q) between Bernoulli(q) and Bernoulli(p).

    Args:
        p:              Reference rate, in (0, 1)
        q:              Compared rate, in [0, 1]

    Raises:
        HdException:    DOMAIN_ERROR for rates out of range

    Returns:
        float:          q log(q/p) + (1 - q) log((1 - q)/(1 - p)), with 0 log 0 = 0
    """
    _check_probability("p", p, open_low=True, open_high=True)
    _check_probability("q", q, open_low=False, open_high=False)
    value = float(rel_entr(q, p) + rel_entr(1.0 - q, 1.0 - p))
    return max(value, 0.0)


def kl_inverse_upper(p: float, t: float) -> float:
    """The q in [p, 1) with H_p(q) = t, or 1 once t reaches H_p(1) = log(1/p).

    Args:
        p:              Reference rate, in (0, 1)
        t:              Divergence level, non-negative

    Raises:
        HdException:    DOMAIN_ERROR for p outside (0, 1) or negative t

    Returns:
        float:          Upper inverse of the divergence, absolute tolerance 1e-12
    """
    _check_probability("p", p, open_low=True, open_high=True)
    if not t >= 0.0:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Divergence level must be >= 0, got {t}!")
    if t == 0.0:
        return p
    if t >= math.log(1.0 / p):
        return 1.0

    return float(
        bisect(
            lambda q: kl_bernoulli(p, q) - t,
            p,
            1.0,
            xtol=KL_INVERSE_XTOL,
            maxiter=KL_INVERSE_MAX_ITER,
        )
    )
