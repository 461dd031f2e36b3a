"""Closed-form detection boundaries and region verdicts.

The limit statements behind each boundary are turned into finite-sample
ratios: b1 for the degree type tests and b2 for the scan test. A ratio above
its threshold means the corresponding test is expected to detect the planted
set; both ratios below their thresholds place the instance in the region
where no test can.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from enum import Enum
from typing import Any, NamedTuple, Optional

from pyhyperdense.kernel import HdException, HdStatus
from pyhyperdense.kernel.combinatorics import falling_factorial, kl_bernoulli
from pyhyperdense.models import calibrated_background


class BoundaryCase(Enum):
    HPC = "HPC"
    KNOWN_RATES = "KnownRates"
    UNKNOWN_RATES = "UnknownRates"


class Verdict(Enum):
    UNDETECTABLE = "Undetectable"
    DETECTABLE_DEGREE = "DetectableDegree"
    DETECTABLE_SCAN = "DetectableScan"
    DETECTABLE_BOTH = "DetectableBoth"
    INDETERMINATE = "Indeterminate"


class BoundaryReport(NamedTuple):
    """Where a parameter point sits relative to the detection boundary."""

    case: BoundaryCase
    """Which boundary was evaluated."""
    b1: float
    """Degree test ratio (compared against the margin)."""
    b2: float
    """Scan test ratio (compared against 1)."""
    verdict: Verdict
    """Region classification."""
    p0_prime: Optional[float] = None
    """Calibrated background rate (unknown rates case)."""
    hpc_threshold: Optional[float] = None
    """Clique size threshold (clique case)."""
    diagnostics: Mapping[str, float] = {}
    """Side conditions and regime ratios; advisory only."""
    recommended: tuple[str, ...] = ()
    """Tests expected to succeed at this point."""

    def to_record(self) -> dict[str, Any]:
        return {
            "case": self.case.value,
            "b1": self.b1,
            "b2": self.b2,
            "verdict": self.verdict.value,
            "p0_prime": self.p0_prime,
            "hpc_threshold": self.hpc_threshold,
            "diagnostics": dict(self.diagnostics),
            "recommended": list(self.recommended),
        }


def classify(b1: float, b2: float, margin: float = 1.0) -> Verdict:
    """Region verdict from the two boundary ratios.

    Args:
        b1:             Degree test ratio
        b2:             Scan test ratio
        margin:         Safety factor mu >= 1 applied to b1

    Raises:
        HdException:    CONFIG_ERROR if margin < 1

    Returns:
        Verdict:        Detectable by either test, undetectable, or in between
    """
    if not margin >= 1.0:
        raise HdException(HdStatus.CONFIG_ERROR, f"Margin must be at least 1, got {margin}!")

    degree = b1 > margin
    scan = b2 > 1.0
    if degree and scan:
        return Verdict.DETECTABLE_BOTH
    if degree:
        return Verdict.DETECTABLE_DEGREE
    if scan:
        return Verdict.DETECTABLE_SCAN
    if b1 < 1.0 / margin and b2 < 1.0:
        return Verdict.UNDETECTABLE
    return Verdict.INDETERMINATE


def _check_sizes(N: int, m: int, n: int) -> None:
    if m < 2 or n < m:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Need 2 <= m <= n, got m={m}, n={n}!")
    if n >= N:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Need n < N (log(N/n) > 0), got n={n}, N={N}!")


def _check_rates(p0: float, p1: float) -> None:
    if not 0.0 < p0 < 1.0:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Background rate p0={p0} must lie in (0, 1)!")
    if not p0 <= p1 <= 1.0:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Planted rate p1={p1} must lie in [p0, 1]!")


def hpc_threshold(N: int, m: int, p0: float) -> float:
    """Clique size threshold (m! log_{1/p0} N)^(1/(m-1)).

    Raises:
        HdException:    DOMAIN_ERROR for p0 outside (0, 1), m < 2 or N < 2
    """
    if not 0.0 < p0 < 1.0:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Background rate p0={p0} must lie in (0, 1)!")
    if m < 2 or N < 2:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Need m >= 2 and N >= 2, got m={m}, N={N}!")
    return (math.factorial(m) * math.log(N) / math.log(1.0 / p0)) ** (1.0 / (m - 1))


def regime_diagnostics(N: int, m: int, n: int, p: float) -> dict[str, float]:
    """Ratios measuring how far the instance is from the asymptotic regime.

    Returns:
        dict[str, float]:   'log_size_ratio' = log N / n^(m-1) and
                            'sparsity_ratio' = log(max(1, 1/(n^(m-1) p))) / log(N/n);
                            small values favor the asymptotic statements
    """
    if not 1 <= n < N:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Need 1 <= n < N, got n={n}, N={N}!")
    if not p > 0.0:
        raise HdException(HdStatus.DOMAIN_ERROR, f"Edge rate must be positive, got {p}!")

    spread = float(n) ** (m - 1)
    return {
        "log_size_ratio": math.log(N) / spread,
        "sparsity_ratio": math.log(max(1.0, 1.0 / (spread * p))) / math.log(N / n),
    }


def _scan_ratio(N: int, m: int, n: int, p_background: float, p1: float) -> float:
    return (
        falling_factorial(n - 1, m - 1)
        * kl_bernoulli(p_background, p1)
        / (math.factorial(m) * math.log(N / n))
    )


def hpc_boundary(N: int, m: int, n: int, p0: float, margin: float = 1.0) -> BoundaryReport:
    """Clique case (p1 = 1): b2 = (n / threshold)^(m-1), b1 = 0."""
    _check_sizes(N, m, n)
    threshold = hpc_threshold(N, m, p0)
    b2 = (n / threshold) ** (m - 1)
    verdict = classify(0.0, b2, margin)
    return BoundaryReport(
        case=BoundaryCase.HPC,
        b1=0.0,
        b2=b2,
        verdict=verdict,
        hpc_threshold=threshold,
        diagnostics=regime_diagnostics(N, m, n, p0),
        recommended=("HCNT",) if b2 > 1.0 else (),
    )


def known_boundary(
    N: int, m: int, n: int, p0: float, p1: float, margin: float = 1.0
) -> BoundaryReport:
    """Boundary when both edge rates are known.

    b1 = ((p1 - p0) / sqrt(p0)) * (n^2 / N)^(m/2)
    b2 = (n-1)...(n-m+1) * H_p0(p1) / (m! log(N/n))

    Raises:
        HdException:    DOMAIN_ERROR for n >= N or rates out of range
    """
    _check_sizes(N, m, n)
    _check_rates(p0, p1)

    b1 = (p1 - p0) / math.sqrt(p0) * (n * n / N) ** (m / 2)
    b2 = _scan_ratio(N, m, n, p0, p1)
    diagnostics = {
        "N^m*p0": float(N) ** m * p0,
        "n^m*p1": float(n) ** m * p1,
        **regime_diagnostics(N, m, n, p0),
    }
    recommended = tuple(
        name for name, ok in (("HTDT", b1 > margin), ("HST", b2 > 1.0)) if ok
    )
    return BoundaryReport(
        case=BoundaryCase.KNOWN_RATES,
        b1=b1,
        b2=b2,
        verdict=classify(b1, b2, margin),
        diagnostics=diagnostics,
        recommended=recommended,
    )


def unknown_boundary(
    N: int, m: int, n: int, p0: float, p1: float, margin: float = 1.0
) -> BoundaryReport:
    """Boundary when the rates are unknown and the background is calibrated.

    The background is replaced by p0' (same expected edge count as the null), so
    the total degree carries no signal and the 2-path statistics take over:
    the loose one when n^2 >= N, the tight one otherwise.

    Raises:
        HdException:    DOMAIN_ERROR as for 'known_boundary';
                        CALIBRATION_INFEASIBLE if p0' <= 0
    """
    _check_sizes(N, m, n)
    _check_rates(p0, p1)
    p0_prime = calibrated_background(N, m, n, p0, p1)

    lift = (p1 - p0_prime) / math.sqrt(p0_prime)
    ratio = n * n / N
    b1 = lift * ratio ** ((m + 1) / 4)
    b2 = _scan_ratio(N, m, n, p0_prime, p1)
    dense_regime = n * n >= N

    diagnostics = {
        "regime_n2_ge_N": 1.0 if dense_regime else 0.0,
        "extension_ratio": lift * ratio ** ((2 * m - 1) / 4),
        "p0*N^m-2n": p0 * float(N) ** m - 2 * n,
        "N^(m-1)*p0": float(N) ** (m - 1) * p0,
        **regime_diagnostics(N, m, n, p0_prime),
    }
    degree_test = "HL2PT" if dense_regime else "HT2PT"
    recommended = tuple(
        name for name, ok in ((degree_test, b1 > margin), ("HST", b2 > 1.0)) if ok
    )
    return BoundaryReport(
        case=BoundaryCase.UNKNOWN_RATES,
        b1=b1,
        b2=b2,
        verdict=classify(b1, b2, margin),
        p0_prime=p0_prime,
        diagnostics=diagnostics,
        recommended=recommended,
    )
