import math

import numpy as np
import pytest

from pyhyperdense.boundaries import (
    BoundaryCase,
    Verdict,
    classify,
    hpc_boundary,
    hpc_threshold,
    known_boundary,
    regime_diagnostics,
    unknown_boundary,
)
from pyhyperdense.kernel import HdException, HdStatus

from ..fixtures import *


def _kl(p: float, q: float) -> float:
    left = q * math.log(q / p) if q > 0 else 0.0
    right = (1 - q) * math.log((1 - q) / (1 - p)) if q < 1 else 0.0
    return left + right


# TESTS


def test_hpc_threshold():
    assert hpc_threshold(1000, 2, 0.5) == pytest.approx(2 * math.log2(1000))
    assert hpc_threshold(10, 3, 0.1) == pytest.approx(math.sqrt(6))
    assert hpc_threshold(1000, 3, 0.5) == pytest.approx(7.73, abs=0.01)


def test_hpc_threshold_domain():
    with pytest.raises(HdException) as exc_info:
        hpc_threshold(100, 2, 1.0)
    assert exc_info.value.status == HdStatus.DOMAIN_ERROR


def test_hpc_boundary():
    report = hpc_boundary(50, 2, 16, 0.5)
    assert report.case is BoundaryCase.HPC
    assert report.hpc_threshold == pytest.approx(11.29, abs=0.01)
    assert report.b1 == 0.0
    assert report.verdict is Verdict.DETECTABLE_SCAN
    assert report.recommended == ("HCNT",)
    assert hpc_boundary(50, 2, 8, 0.5).verdict is Verdict.UNDETECTABLE


def test_known_boundary_values():
    report = known_boundary(100, 2, 10, 0.1, 0.5)
    assert report.b1 == pytest.approx(1.2649, abs=1e-4)
    assert report.b2 == pytest.approx(9 * _kl(0.1, 0.5) / (2 * math.log(10)))
    assert report.b2 == pytest.approx(0.998, abs=1e-3)
    assert report.verdict is Verdict.DETECTABLE_DEGREE
    assert set(report.diagnostics) >= {"N^m*p0", "n^m*p1", "log_size_ratio", "sparsity_ratio"}


def test_known_boundary_deep_scan_region():
    report = known_boundary(20, 3, 10, 0.2, 0.8)
    assert report.b2 == pytest.approx(14.4, abs=0.05)
    assert report.verdict in (Verdict.DETECTABLE_SCAN, Verdict.DETECTABLE_BOTH)
    assert "HST" in report.recommended


def test_known_boundary_without_signal():
    report = known_boundary(100, 3, 10, 0.3, 0.3)
    assert report.b1 == 0.0
    assert report.b2 == 0.0
    assert report.verdict is Verdict.UNDETECTABLE


def test_known_boundary_domain():
    with pytest.raises(HdException) as exc_info:
        known_boundary(10, 2, 10, 0.1, 0.5)
    assert exc_info.value.status == HdStatus.DOMAIN_ERROR


def test_undetectable_example():
    report = known_boundary(400, 2, 5, 0.3, 0.35)
    assert report.b1 < 0.01
    assert report.b2 < 0.01
    assert report.verdict is Verdict.UNDETECTABLE


def test_unknown_boundary_values():
    report = unknown_boundary(10, 2, 4, 0.2, 0.8)
    p0_prime = (45 * 0.2 - 6 * 0.8) / 39
    assert report.p0_prime == pytest.approx(p0_prime)
    assert report.b1 == pytest.approx((0.8 - p0_prime) / math.sqrt(p0_prime) * (16 / 10) ** 0.75)
    assert report.b2 == pytest.approx(3 * _kl(p0_prime, 0.8) / (2 * math.log(2.5)))
    assert report.diagnostics["regime_n2_ge_N"] == 1.0


def test_unknown_boundary_without_signal():
    report = unknown_boundary(50, 3, 6, 0.2, 0.2)
    assert report.p0_prime == 0.2
    assert report.b1 == 0.0 and report.b2 == 0.0
    assert report.verdict is Verdict.UNDETECTABLE


def test_unknown_boundary_infeasible():
    with pytest.raises(HdException) as exc_info:
        unknown_boundary(5, 2, 4, 0.1, 1.0)
    assert exc_info.value.status == HdStatus.CALIBRATION_INFEASIBLE


def test_regime_indicator_flips_at_sqrt_n():
    assert unknown_boundary(100, 2, 9, 0.3, 0.6).diagnostics["regime_n2_ge_N"] == 0.0
    assert unknown_boundary(100, 2, 10, 0.3, 0.6).diagnostics["regime_n2_ge_N"] == 1.0
    assert "HT2PT" in unknown_boundary(100, 2, 9, 0.01, 1.0).recommended


def test_regime_diagnostics():
    assert regime_diagnostics(10**6, 2, 10**3, 0.5)["log_size_ratio"] == pytest.approx(0.0138155, abs=1e-6)
    assert regime_diagnostics(100, 2, 10, 0.5)["sparsity_ratio"] == 0.0
    assert regime_diagnostics(100, 3, 10, 1e-6)["sparsity_ratio"] == pytest.approx(4.0)


def test_boundaries_increase_with_p1():
    rates = np.linspace(0.25, 0.95, 8)
    known = [known_boundary(60, 3, 8, 0.2, p1) for p1 in rates]
    unknown = [unknown_boundary(60, 3, 8, 0.2, p1) for p1 in rates]
    for reports in (known, unknown):
        assert all(np.diff([r.b1 for r in reports]) > 0)
        assert all(np.diff([r.b2 for r in reports]) > 0)


@pytest.mark.parametrize(
    "b1, b2, margin, verdict",
    [
        (2.0, 2.0, 1.0, Verdict.DETECTABLE_BOTH),
        (2.0, 0.5, 1.0, Verdict.DETECTABLE_DEGREE),
        (0.1, 1.5, 1.0, Verdict.DETECTABLE_SCAN),
        (0.1, 0.5, 1.0, Verdict.UNDETECTABLE),
        (1.5, 0.5, 2.0, Verdict.INDETERMINATE),
        (0.8, 0.5, 2.0, Verdict.INDETERMINATE),
        (1.0, 1.0, 1.0, Verdict.INDETERMINATE),
    ],
)
def test_classify(b1, b2, margin, verdict):
    assert classify(b1, b2, margin) is verdict


def test_classify_margin():
    with pytest.raises(HdException) as exc_info:
        classify(1.0, 1.0, 0.5)
    assert exc_info.value.status == HdStatus.CONFIG_ERROR


def test_report_record():
    record = known_boundary(100, 2, 10, 0.1, 0.5).to_record()
    assert record["case"] == "KnownRates"
    assert record["verdict"] == "DetectableDegree"
    assert isinstance(record["diagnostics"], dict)
