"""Threshold calibration, Monte-Carlo risk estimation and parameter sweeps.

Random stream layout for one (null block b0, alternative block b1) pair:

    null replication r of null grid point k:    k * 2^32 + b0 * 2^40 + r
    calibration replication r:         2^62 +           b0 * 2^40 + r
    alternative replication r:         2^63 +           b1 * 2^40 + r

With both blocks 0 and a simple null, replication r uses stream r under the
null and 2^63 + r under the alternative.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Final, NamedTuple, Optional, TypeVar, Union

import numpy as np
from scipy.stats import norm

from pyhyperdense.boundaries import (
    BoundaryCase,
    BoundaryReport,
    hpc_boundary,
    known_boundary,
    unknown_boundary,
)
from pyhyperdense.hypergraph import UniformHypergraph
from pyhyperdense.kernel import HdException, HdStatus
from pyhyperdense.kernel.combinatorics import binomial, kl_inverse_upper
from pyhyperdense.models import (
    NullModel,
    PlantedModel,
    RngStream,
    calibrated_background,
    draw_null,
    draw_planted,
)
from pyhyperdense.result import Replication, attempt, split_failures
from pyhyperdense.statistics import (
    StatName,
    StatValue,
    T2Scaling,
    V2Denominator,
    hcnt_has_clique,
    hl2pt_stat,
    hst_stat,
    hst_stat_greedy,
    ht2pt_stat,
    htdt_stat,
    p0_hat,
)
from pyhyperdense.statistics.scan import DEFAULT_RESTARTS

logger = logging.getLogger(__name__)

T = TypeVar("T")

CALIBRATION_BASE: Final[int] = 2**62
ALTERNATIVE_BASE: Final[int] = 2**63
BLOCK_STRIDE: Final[int] = 2**40
GRID_STRIDE: Final[int] = 2**32
MIN_MC_REPS: Final[int] = 100

_DISCRETE: Final[frozenset[StatName]] = frozenset({StatName.HTDT, StatName.HST})
_SCAN_SIZED: Final[frozenset[StatName]] = frozenset({StatName.HST, StatName.HCNT})


def _config_error(msg: str) -> HdException:
    return HdException(HdStatus.CONFIG_ERROR, msg)


def _check_alpha(alpha: float, *, allow_one: bool) -> None:
    upper_ok = alpha <= 1.0 if allow_one else alpha < 1.0
    if not (alpha > 0.0 and upper_ok):
        raise _config_error(f"Level alpha={alpha} is outside (0, 1)!")


# Threshold policies


@dataclass(frozen=True)
class MCQuantile:
    """Smallest simulated null value whose empirical exceedance is at most alpha."""

    alpha: float
    reps: int = 1000

    def __post_init__(self) -> None:
        _check_alpha(self.alpha, allow_one=True)
        if self.reps < MIN_MC_REPS:
            raise _config_error(f"MC calibration needs at least {MIN_MC_REPS} reps, got {self.reps}!")


@dataclass(frozen=True)
class AnalyticScanKnown:
    """Scan threshold a * C(n, m) with a = eta * p0 + (1 - eta) * p1."""

    eta: Optional[float] = None

    def __post_init__(self) -> None:
        if self.eta is not None and not 0.0 <= self.eta <= 1.0:
            raise _config_error(f"eta={self.eta} must lie in [0, 1]!")


@dataclass(frozen=True)
class AnalyticScanUnknown:
    """Per-graph scan threshold C(n, m) * H^-1_{p0_hat}(n (log(N/n) + 2) / C(n, m))."""


@dataclass(frozen=True)
class Fixed:
    t: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.t):
            raise _config_error(f"Fixed threshold must be finite, got {self.t}!")


@dataclass(frozen=True)
class GaussianQuantile:
    """Upper standard normal quantile, for the standardized 2-path statistics."""

    alpha: float

    def __post_init__(self) -> None:
        _check_alpha(self.alpha, allow_one=False)


ThresholdPolicy = Union[MCQuantile, AnalyticScanKnown, AnalyticScanUnknown, Fixed, GaussianQuantile]


@dataclass(frozen=True)
class TestSpec:
    """A test: statistic, threshold policy and statistic options.

    Rejection is 'statistic >= threshold'; the clique test rejects on indicator 1.
    """

    __test__ = False

    statistic: StatName
    policy: ThresholdPolicy
    scan_n: Optional[int] = None
    """Scan or clique size; defaults to the planted size of the alternative."""
    scan_fallback: bool = False
    """Use the greedy scan when the exact scan exceeds the enumeration budget."""
    restarts: int = DEFAULT_RESTARTS
    randomize_ties: bool = False
    """Add an independent U[0, 1) to integer-valued statistics (randomized test)."""
    v2_denominator: V2Denominator = V2Denominator.FACTORIAL
    t2_scaling: T2Scaling = T2Scaling.DISPLAYED
    null_grid: Optional[tuple[float, ...]] = None
    """Background rates at which type-I error is evaluated (maximum reported)."""
    budget: Optional[int] = None
    """Enumeration budget override for HST and HCNT."""

    def __post_init__(self) -> None:
        if isinstance(self.policy, (AnalyticScanKnown, AnalyticScanUnknown)) and (
            self.statistic is not StatName.HST
        ):
            raise _config_error("Analytic scan thresholds only apply to the HST statistic!")
        if self.restarts < 0:
            raise _config_error("Number of greedy restarts must be non-negative!")
        if self.null_grid is not None:
            if not self.null_grid or len(self.null_grid) > BLOCK_STRIDE // GRID_STRIDE:
                raise _config_error("Null grid must hold between 1 and 256 rates!")
            object.__setattr__(self, "null_grid", tuple(float(p) for p in self.null_grid))


class Decision(NamedTuple):
    reject: bool
    statistic: StatValue
    threshold: float


class RiskEstimate(NamedTuple):
    """Monte-Carlo estimate of type-I + type-II error."""

    type1: float
    """Fraction of null replications rejected (maximum over the null grid)."""
    type2: float
    """Fraction of planted replications retained."""
    risk: float
    se_type1: float
    se_type2: float
    reps: int
    seed: int
    threshold_used: float
    """Threshold applied; the mean over null replications for per-graph thresholds."""
    approximate: bool = False
    """Some replication used the greedy scan."""
    type1_grid: tuple[tuple[float, float], ...] = ()
    """(p0, type-I rate) per null grid point."""


def _binomial_se(rate: float, reps: int) -> float:
    return math.sqrt(rate * (1.0 - rate) / reps)


# Evaluation of one graph


def resolve_scan_size(spec: TestSpec, scan_n: Optional[int] = None) -> Optional[int]:
    n = spec.scan_n if spec.scan_n is not None else scan_n
    if spec.statistic in _SCAN_SIZED and n is None:
        raise _config_error(f"{spec.statistic.value} needs a scan size n!")
    return n


def evaluate_statistic(
    spec: TestSpec,
    graph: UniformHypergraph,
    rng: Union[np.random.Generator, RngStream, None] = None,
    scan_n: Optional[int] = None,
) -> StatValue:
    """Compute the statistic named by the test.

    Raises:
        HdException:    Propagated statistic errors (budget, domain, ...)
    """
    n = resolve_scan_size(spec, scan_n)
    stat = spec.statistic
    if stat is StatName.HTDT:
        return htdt_stat(graph)
    if stat is StatName.HL2PT:
        return hl2pt_stat(graph, denominator=spec.v2_denominator)
    if stat is StatName.HT2PT:
        return ht2pt_stat(graph, spec.t2_scaling)

    assert n is not None
    if stat is StatName.HCNT:
        return hcnt_has_clique(graph, n, spec.budget)
    try:
        return hst_stat(graph, n, spec.budget)
    except HdException as exc:
        if exc.status is not HdStatus.BUDGET_EXCEEDED or not spec.scan_fallback:
            raise
        logger.debug("exact scan over budget, falling back to greedy search: %s", exc.msg)
        return hst_stat_greedy(graph, n, spec.restarts, rng)


def _score(spec: TestSpec, value: StatValue, gen: Optional[np.random.Generator]) -> float:
    if spec.randomize_ties and spec.statistic in _DISCRETE:
        if gen is None:
            raise _config_error("Randomized tie breaking needs a random stream!")
        return value.value + float(gen.random())
    return value.value


def _rejects(spec: TestSpec, value: StatValue, score: float, threshold: float) -> bool:
    if spec.statistic is StatName.HCNT:
        return value.value >= 1.0
    return score >= threshold


def scan_threshold_known(N: int, m: int, n: int, p0: float, p1: float, eta: Optional[float] = None) -> float:
    """a * C(n, m) with a = eta p0 + (1 - eta) p1.

    The default eta is min((C(n, m) p1)^(-1/4), log(N/n)^(-1/4)), capped at 1.
    """
    if n >= N:
        raise _config_error(f"Analytic scan threshold needs n < N, got n={n}, N={N}!")
    inner = binomial(n, m)
    if eta is None:
        eta = min(1.0, (inner * p1) ** -0.25, math.log(N / n) ** -0.25)
    return (eta * p0 + (1.0 - eta) * p1) * inner


def scan_threshold_unknown(graph: UniformHypergraph, n: int) -> float:
    """C(n, m) * H^-1_{p0_hat}(n (log(N/n) + 2) / C(n, m)) for the observed graph."""
    N, m = graph.N, graph.m
    if n >= N:
        raise _config_error(f"Analytic scan threshold needs n < N, got n={n}, N={N}!")
    inner = binomial(n, m)
    rate = p0_hat(graph)
    if rate <= 0.0 or rate >= 1.0:
        return float(inner)
    return inner * kl_inverse_upper(rate, n * (math.log(N / n) + 2.0) / inner)


def decide(
    spec: TestSpec,
    graph: UniformHypergraph,
    threshold: Optional[float],
    rng: Union[np.random.Generator, RngStream, None] = None,
    scan_n: Optional[int] = None,
) -> Decision:
    """Apply the test to one graph.

    Args:
        spec:           Test definition
        graph:          Observed hypergraph
        threshold:      Threshold to use; None for per-graph analytic thresholds
        rng:            Stream for greedy restarts and tie randomization
        scan_n:         Scan size when the TestSpec does not fix one
    """
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    n = resolve_scan_size(spec, scan_n)
    value = evaluate_statistic(spec, graph, gen, n)
    if threshold is None:
        if not isinstance(spec.policy, AnalyticScanUnknown) or n is None:
            raise _config_error("A threshold is required unless the policy is AnalyticScanUnknown!")
        threshold = scan_threshold_unknown(graph, n)
    score = _score(spec, value, gen)
    return Decision(_rejects(spec, value, score, threshold), value, threshold)


# Calibration


def mc_quantile(values: Sequence[float], alpha: float) -> float:
    """Smallest observed t with empirical P(value >= t) <= alpha.

    When even the largest value is too frequent, the next float above it is
    returned (never reject).
    """
    ordered = np.sort(np.asarray(values, dtype=np.float64))
    if ordered.size == 0:
        raise _config_error("Cannot calibrate on an empty sample!")
    distinct, first = np.unique(ordered, return_index=True)
    exceedance = (ordered.size - first) / ordered.size
    feasible = exceedance <= alpha
    if feasible.any():
        return float(distinct[int(np.argmax(feasible))])
    return float(np.nextafter(ordered[-1], np.inf))


def _run_indexed(fun: Callable[[int], T], count: int, threads: int) -> list[T]:
    if threads <= 1 or count <= 1:
        return [fun(idx) for idx in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fun, range(count)))


def _gather(results: Sequence[Replication[T]], what: str) -> list[T]:
    values, failures = split_failures(results)
    if failures:
        idx, first = failures[0]
        raise HdException(
            first.status,
            f"{len(failures)} of {len(results)} {what} replications failed "
            f"(first at replication {idx}: {first.msg})",
        )
    return values


def _stream_id(base: int, block: int, r: int, grid_idx: int = 0) -> int:
    return base + block * BLOCK_STRIDE + grid_idx * GRID_STRIDE + r


def _null_scores(
    spec: TestSpec, null: NullModel, n: Optional[int], reps: int, master_seed: int, block: int, threads: int
) -> list[float]:
    def one(r: int) -> Replication[float]:
        gen = RngStream(master_seed, _stream_id(CALIBRATION_BASE, block, r)).generator()
        graph = draw_null(null, gen)
        return attempt(lambda: _score(spec, evaluate_statistic(spec, graph, gen, n), gen))

    return _gather(_run_indexed(one, reps, threads), "calibration")


def calibrate_threshold(
    spec: TestSpec,
    null: NullModel,
    scan_n: Optional[int] = None,
    *,
    p1: Optional[float] = None,
    graph: Optional[UniformHypergraph] = None,
    master_seed: int = 0,
    block: int = 0,
    threads: int = 1,
) -> float:
    """Threshold of the test's policy for the given null model.

    Args:
        spec:           Test definition
        null:           Null model
        scan_n:         Scan size when the TestSpec does not fix one
        p1:             Planted rate (AnalyticScanKnown)
        graph:          Observed graph (AnalyticScanUnknown)
        master_seed:    Seed of the calibration streams (MCQuantile)
        block:          Stream block of the calibration sample
        threads:        Worker threads for the calibration sample

    Raises:
        HdException:    CONFIG_ERROR for missing inputs of analytic policies

    Returns:
        float:          Threshold t; the test rejects on statistic >= t
    """
    policy = spec.policy
    n = resolve_scan_size(spec, scan_n)

    if spec.statistic is StatName.HCNT:
        return 1.0
    if isinstance(policy, Fixed):
        return policy.t
    if isinstance(policy, GaussianQuantile):
        return float(norm.isf(policy.alpha))
    if isinstance(policy, AnalyticScanKnown):
        if p1 is None or n is None:
            raise _config_error("AnalyticScanKnown needs the planted rate p1 and the scan size!")
        return scan_threshold_known(null.N, null.m, n, null.p0, p1, policy.eta)
    if isinstance(policy, AnalyticScanUnknown):
        if graph is None or n is None:
            raise _config_error("AnalyticScanUnknown is computed from an observed graph and scan size!")
        return scan_threshold_unknown(graph, n)

    scores = _null_scores(spec, null, n, policy.reps, master_seed, block, threads)
    threshold = mc_quantile(scores, policy.alpha)
    logger.debug("calibrated %s threshold %.9g from %d null draws", spec.statistic.value, threshold, policy.reps)
    return threshold


# Risk estimation


class _Outcome(NamedTuple):
    reject: bool
    threshold: float
    approximate: bool


class _NullSide(NamedTuple):
    threshold: Optional[float]
    type1: float
    se_type1: float
    threshold_used: float
    approximate: bool
    grid: tuple[tuple[float, float], ...]


def _replicate(
    spec: TestSpec,
    draw: Callable[[np.random.Generator], UniformHypergraph],
    stream: RngStream,
    n: Optional[int],
    threshold: Optional[float],
) -> Replication[_Outcome]:
    gen = stream.generator()
    graph = draw(gen)
    return attempt(decide, spec, graph, threshold, gen, n).map(
        lambda decision: _Outcome(decision.reject, decision.threshold, decision.statistic.approximate)
    )


def _check_reps(reps: int) -> None:
    if not 1 <= reps < GRID_STRIDE:
        raise _config_error(f"Number of replications must be in [1, 2^32), got {reps}!")


def _null_side(
    spec: TestSpec,
    null: NullModel,
    n: Optional[int],
    reps: int,
    master_seed: int,
    threads: int,
    block: int,
    p1: Optional[float],
) -> _NullSide:
    threshold: Optional[float] = None
    if not isinstance(spec.policy, AnalyticScanUnknown):
        threshold = calibrate_threshold(
            spec, null, n, p1=p1, master_seed=master_seed, block=block, threads=threads
        )

    grid = spec.null_grid if spec.null_grid is not None else (null.p0,)
    rates: list[tuple[float, float]] = []
    used: list[float] = []
    approximate = False
    for k, p0 in enumerate(grid):
        model = NullModel(null.N, null.m, p0)

        def one(r: int, model: NullModel = model, k: int = k) -> Replication[_Outcome]:
            stream = RngStream(master_seed, _stream_id(0, block, r, k))
            return _replicate(spec, lambda gen: draw_null(model, gen), stream, n, threshold)

        outcomes = _gather(_run_indexed(one, reps, threads), "null")
        rates.append((p0, sum(o.reject for o in outcomes) / reps))
        approximate = approximate or any(o.approximate for o in outcomes)
        if k == 0:
            used = [o.threshold for o in outcomes]

    worst = max(rates, key=lambda item: item[1])[1]
    threshold_used = threshold if threshold is not None else math.fsum(used) / len(used)
    return _NullSide(
        threshold, worst, _binomial_se(worst, reps), threshold_used, approximate, tuple(rates)
    )


def _estimate(
    spec: TestSpec,
    null: NullModel,
    alt: PlantedModel,
    reps: int,
    master_seed: int,
    threads: int,
    alt_block: int,
    null_side: _NullSide,
    n: Optional[int],
) -> RiskEstimate:
    def one(r: int) -> Replication[_Outcome]:
        stream = RngStream(master_seed, _stream_id(ALTERNATIVE_BASE, alt_block, r))
        return _replicate(spec, lambda gen: draw_planted(alt, gen), stream, n, null_side.threshold)

    outcomes = _gather(_run_indexed(one, reps, threads), "alternative")
    type2 = sum(not o.reject for o in outcomes) / reps
    return RiskEstimate(
        type1=null_side.type1,
        type2=type2,
        risk=null_side.type1 + type2,
        se_type1=null_side.se_type1,
        se_type2=_binomial_se(type2, reps),
        reps=reps,
        seed=master_seed,
        threshold_used=null_side.threshold_used,
        approximate=null_side.approximate or any(o.approximate for o in outcomes),
        type1_grid=null_side.grid,
    )


def _check_pair(null: NullModel, alt: PlantedModel) -> None:
    if (null.N, null.m) != (alt.N, alt.m):
        raise _config_error("Null and planted models must share N and m!")


def estimate_risk(
    spec: TestSpec,
    null: NullModel,
    alt: PlantedModel,
    reps: int,
    master_seed: int,
    threads: int = 1,
) -> RiskEstimate:
    """Monte-Carlo type-I + type-II error of a test.

    The planted set is fixed to the alternative's S; every statistic is
    invariant under vertex relabeling, so this equals the worst case over S.

    Args:
        spec:           Test definition
        null:           Null model (and base of the null grid)
        alt:            Planted model
        reps:           Replications per hypothesis
        master_seed:    Seed from which every stream is derived
        threads:        Worker threads; results do not depend on it

    Raises:
        HdException:    CONFIG_ERROR for inconsistent inputs, or the status of failed
                        replications (for example BUDGET_EXCEEDED)

    Returns:
        RiskEstimate:   Rates, standard errors and provenance
    """
    _check_pair(null, alt)
    _check_reps(reps)
    n = resolve_scan_size(spec, alt.n)
    side = _null_side(spec, null, n, reps, master_seed, threads, 0, alt.p1)
    return _estimate(spec, null, alt, reps, master_seed, threads, 0, side, n)


# Sweeps

SWEEP_AXES: Final[tuple[str, ...]] = ("N", "n", "p0", "p1")
_INT_PARAMS: Final[frozenset[str]] = frozenset({"N", "m", "n"})


@dataclass(frozen=True)
class SweepGrid:
    """Parameter grid: the cartesian product of the axes, first axis outermost."""

    axes: tuple[tuple[str, tuple[float, ...]], ...]
    fixed: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        names = [name for name, _ in self.axes]
        for name in names:
            if name not in SWEEP_AXES:
                raise _config_error(f"Cannot sweep over {name!r}; axes must be among {SWEEP_AXES}!")
        if len(set(names)) != len(names):
            raise _config_error("Duplicate sweep axis!")
        for name, values in self.axes:
            if not values:
                raise _config_error(f"Sweep axis {name!r} has no values!")
        missing = [key for key in ("N", "m", "n", "p0", "p1") if key not in names and key not in self.fixed]
        if missing:
            raise _config_error(f"Sweep parameters {missing} are neither axes nor fixed!")

    @classmethod
    def from_mappings(cls, axes: Mapping[str, Sequence[float]], fixed: Mapping[str, float]) -> SweepGrid:
        return cls(tuple((name, tuple(values)) for name, values in axes.items()), dict(fixed))

    def cells(self) -> list[dict[str, float]]:
        names = [name for name, _ in self.axes]
        out = []
        for combo in itertools.product(*(values for _, values in self.axes)):
            cell = dict(self.fixed)
            cell.update(zip(names, combo))
            out.append({k: (int(v) if k in _INT_PARAMS else float(v)) for k, v in cell.items()})
        return out


class SweepRecord(NamedTuple):
    """One output row of a sweep."""

    N: int
    m: int
    n: int
    p0: float
    p1: float
    p0_prime: Optional[float]
    b1: Optional[float]
    b2: Optional[float]
    verdict: str
    test: str
    threshold: Optional[float]
    type1: Optional[float]
    se1: Optional[float]
    type2: Optional[float]
    se2: Optional[float]
    risk: Optional[float]
    reps: int
    seed: int
    error: str = ""


def boundary_for(case: BoundaryCase, N: int, m: int, n: int, p0: float, p1: float, margin: float) -> BoundaryReport:
    if case is BoundaryCase.KNOWN_RATES:
        return known_boundary(N, m, n, p0, p1, margin)
    if case is BoundaryCase.UNKNOWN_RATES:
        return unknown_boundary(N, m, n, p0, p1, margin)
    return hpc_boundary(N, m, n, p0, margin)


def _optional_background(N: int, m: int, n: int, p0: float, p1: float) -> Optional[float]:
    try:
        return calibrated_background(N, m, n, p0, p1)
    except HdException:
        return None


def run_cell(
    spec: TestSpec,
    cell: Mapping[str, Any],
    reps: int,
    master_seed: int,
    *,
    threads: int = 1,
    boundary: BoundaryCase = BoundaryCase.KNOWN_RATES,
    margin: float = 1.0,
    null_block: int = 0,
    alt_block: int = 0,
    null_cache: Optional[dict[tuple[Any, ...], _NullSide]] = None,
) -> SweepRecord:
    """Evaluate one parameter point: boundary report plus (for reps > 0) risk.

    Raises:
        HdException:    Any failure; 'sweep' turns it into an error record
    """
    N, m, n = int(cell["N"]), int(cell["m"]), int(cell["n"])
    p0, p1 = float(cell["p0"]), float(cell["p1"])
    base = dict(N=N, m=m, n=n, p0=p0, p1=p1, test=spec.statistic.value, reps=reps, seed=master_seed)

    null = NullModel(N, m, p0)
    alt = PlantedModel(N, m, n, p0, p1)
    report = boundary_for(boundary, N, m, n, p0, p1, margin)
    p0_prime = report.p0_prime if report.p0_prime is not None else _optional_background(N, m, n, p0, p1)
    analytic = dict(p0_prime=p0_prime, b1=report.b1, b2=report.b2, verdict=report.verdict.value)

    if reps == 0:
        return SweepRecord(
            **base, **analytic, threshold=None, type1=None, se1=None, type2=None, se2=None, risk=None
        )

    _check_reps(reps)
    scan_n = resolve_scan_size(spec, n)
    key = (N, m, p0, scan_n, p1 if isinstance(spec.policy, AnalyticScanKnown) else None)
    side = null_cache.get(key) if null_cache is not None else None
    if side is None:
        side = _null_side(spec, null, scan_n, reps, master_seed, threads, null_block, p1)
        if null_cache is not None:
            null_cache[key] = side

    est = _estimate(spec, null, alt, reps, master_seed, threads, alt_block, side, scan_n)
    return SweepRecord(
        **base,
        **analytic,
        threshold=est.threshold_used,
        type1=est.type1,
        se1=est.se_type1,
        type2=est.type2,
        se2=est.se_type2,
        risk=est.risk,
    )


def _error_record(spec: TestSpec, cell: Mapping[str, Any], reps: int, seed: int, exc: HdException) -> SweepRecord:
    return SweepRecord(
        N=int(cell["N"]),
        m=int(cell["m"]),
        n=int(cell["n"]),
        p0=float(cell["p0"]),
        p1=float(cell["p1"]),
        p0_prime=None,
        b1=None,
        b2=None,
        verdict="Error",
        test=spec.statistic.value,
        threshold=None,
        type1=None,
        se1=None,
        type2=None,
        se2=None,
        risk=None,
        reps=reps,
        seed=seed,
        error=exc.one_line(),
    )


def sweep(
    grid: SweepGrid,
    spec: TestSpec,
    reps: int,
    master_seed: int,
    threads: int = 1,
    boundary: BoundaryCase = BoundaryCase.KNOWN_RATES,
    margin: float = 1.0,
) -> list[SweepRecord]:
    """Evaluate every cell of the grid.

    Cells sharing a null model (N, m, p0) share its stream block, so they
    reuse one calibration and one type-I sample; the planted draws of each
    cell use the cell's own block. Failing cells produce an error record.

    Returns:
        list[SweepRecord]:  One record per cell, in grid order
    """
    records: list[SweepRecord] = []
    null_blocks: dict[tuple[int, int, float], int] = {}
    null_cache: dict[tuple[Any, ...], _NullSide] = {}
    cells = grid.cells()

    for idx, cell in enumerate(cells):
        null_key = (int(cell["N"]), int(cell["m"]), float(cell["p0"]))
        block = null_blocks.setdefault(null_key, len(null_blocks))
        try:
            record = run_cell(
                spec,
                cell,
                reps,
                master_seed,
                threads=threads,
                boundary=boundary,
                margin=margin,
                null_block=block,
                alt_block=idx,
                null_cache=null_cache,
            )
        except HdException as exc:
            logger.warning("sweep cell %d failed: %s", idx, exc.one_line())
            record = _error_record(spec, cell, reps, master_seed, exc)
        else:
            logger.info("sweep cell %d/%d done: %s", idx + 1, len(cells), record.verdict)
        records.append(record)
    return records
