"""Null and planted random hypergraph models with reproducible random streams.

Stream derivation (frozen): the generator of stream (master_seed, stream_id) is

    numpy.random.Generator(
        numpy.random.Philox(
            numpy.random.SeedSequence(entropy=master_seed, spawn_key=(stream_id,))
        )
    )

Philox is a counter-based generator, so a stream's output depends only on
its key and never on how replications are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from pyhyperdense.kernel import UINT64_LIMIT, HdException, HdStatus
from pyhyperdense.hypergraph import UniformHypergraph, checked_capacity
from pyhyperdense.kernel.combinatorics import binomial, subset_ranks_within


def _construction_error(msg: str) -> HdException:
    return HdException(HdStatus.CONSTRUCTION_ERROR, msg)


@dataclass(frozen=True)
class RngStream:
    """Key of an independent, reproducible random stream."""

    master_seed: int
    stream_id: int

    def __post_init__(self) -> None:
        for name in ("master_seed", "stream_id"):
            value = getattr(self, name)
            if not 0 <= value < UINT64_LIMIT:
                raise HdException(HdStatus.CONFIG_ERROR, f"{name}={value} is not a 64-bit value!")

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of the stream."""
        seq = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(seq))


def derive_stream(master_seed: int, stream_id: int) -> RngStream:
    return RngStream(master_seed, stream_id)


@dataclass(frozen=True)
class NullModel:
    """Erdos-Renyi m-uniform hypergraph: every potential edge with rate p0."""

    N: int
    m: int
    p0: float

    def __post_init__(self) -> None:
        if not 2 <= self.m <= self.N:
            raise _construction_error(f"Need 2 <= m <= N, got N={self.N}, m={self.m}!")
        if not 0.0 < self.p0 <= 1.0:
            raise _construction_error(f"Edge rate p0={self.p0} must lie in (0, 1]!")

    @property
    def n_potential(self) -> int:
        return binomial(self.N, self.m)


@dataclass(frozen=True)
class PlantedModel:
    """Null background with rate p0 plus a planted vertex set S of size n with inner rate p1."""

    N: int
    m: int
    n: int
    p0: float
    p1: float
    S: Optional[tuple[int, ...]] = field(default=None)

    def __post_init__(self) -> None:
        if not 2 <= self.m <= self.n <= self.N:
            raise _construction_error(
                f"Need 2 <= m <= n <= N, got N={self.N}, m={self.m}, n={self.n}!"
            )
        if not 0.0 < self.p0 <= self.p1 <= 1.0:
            raise _construction_error(f"Need 0 < p0 <= p1 <= 1, got p0={self.p0}, p1={self.p1}!")

        if self.S is None:
            object.__setattr__(self, "S", tuple(range(self.n)))
        else:
            planted = tuple(sorted(set(int(v) for v in self.S)))
            if len(planted) != self.n or len(planted) != len(self.S):
                raise _construction_error(f"Planted set must hold {self.n} distinct vertices!")
            if planted[0] < 0 or planted[-1] >= self.N:
                raise _construction_error(f"Planted set reaches outside [0, {self.N})!")
            object.__setattr__(self, "S", planted)

    @property
    def planted(self) -> tuple[int, ...]:
        assert self.S is not None
        return self.S

    def null(self) -> NullModel:
        """The null model sharing this model's background rate."""
        return NullModel(self.N, self.m, self.p0)

    def expected_edges(self) -> float:
        inner = binomial(self.n, self.m)
        return (binomial(self.N, self.m) - inner) * self.p0 + inner * self.p1


def planted_edge_mask(N: int, m: int, planted: tuple[int, ...]) -> np.ndarray:
    """Flags (in colex order) of the potential edges lying inside the planted set."""
    inside = np.zeros(checked_capacity(N, m), dtype=np.bool_)
    n = len(planted)
    if planted == tuple(range(n)):
        # Edges inside {0..n-1} are exactly the colex ranks below C(n, m)
        inside[: binomial(n, m)] = True
    else:
        inside[subset_ranks_within(planted, m, N)] = True
    return inside


def draw_null(model: NullModel, gen: np.random.Generator) -> UniformHypergraph:
    """'sample_null' on an already positioned generator (one uniform per potential edge)."""
    capacity = checked_capacity(model.N, model.m)
    return UniformHypergraph.from_bits(model.N, model.m, gen.random(capacity) < model.p0)


def draw_planted(model: PlantedModel, gen: np.random.Generator) -> UniformHypergraph:
    """'sample_planted' on an already positioned generator."""
    inside = planted_edge_mask(model.N, model.m, model.planted)
    rates = np.where(inside, model.p1, model.p0)
    return UniformHypergraph.from_bits(model.N, model.m, gen.random(inside.shape[0]) < rates)


def sample_null(model: NullModel, rng: RngStream) -> UniformHypergraph:
    """Sample from the null model.

    Args:
        model:      Null model parameters
        rng:        Random stream key

    Returns:
        UniformHypergraph:  Each potential edge present independently with rate p0
    """
    return draw_null(model, rng.generator())


def sample_planted(model: PlantedModel, rng: RngStream) -> UniformHypergraph:
    """Sample from the planted model: rate p1 inside S, p0 elsewhere."""
    return draw_planted(model, rng.generator())


def calibrated_background(N: int, m: int, n: int, p0: float, p1: float) -> float:
    """Background rate p0' giving the planted model the null's expected edge count.

    (C(N, m) - C(n, m)) * p0' + C(n, m) * p1 = C(N, m) * p0

    Raises:
        HdException:    DOMAIN_ERROR when n >= N; CALIBRATION_INFEASIBLE when p0' <= 0

    Returns:
        float:          The calibrated background rate p0'
    """
    if not 2 <= m <= n < N:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Need 2 <= m <= n < N, got N={N}, m={m}, n={n}!")
    if not 0.0 < p0 <= p1 <= 1.0:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Need 0 < p0 <= p1 <= 1, got p0={p0}, p1={p1}!")
    if p1 == p0:
        return p0

    total = binomial(N, m)
    inner = binomial(n, m)
    numerator = math.fsum((total * p0, -inner * p1))
    if numerator <= 0.0:
        raise HdException(
            HdStatus.CALIBRATION_INFEASIBLE,
            f"C(N,m)*p0 = {total * p0:g} does not exceed C(n,m)*p1 = {inner * p1:g}!",
        )
    return numerator / (total - inner)
