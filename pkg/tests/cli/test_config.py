import pytest

from pyhyperdense.boundaries import BoundaryCase
from pyhyperdense.config import load_sweep_config, parse_policy, parse_sweep_config
from pyhyperdense.experiments import AnalyticScanKnown, Fixed, GaussianQuantile, MCQuantile
from pyhyperdense.result import Err, Ok
from pyhyperdense.statistics import StatName, T2Scaling, V2Denominator

from ..fixtures import *

CONFIG = """
axes:
  p1: [0.22, 0.5, 0.8]
fixed: {N: 20, m: 3, n: 10, p0: 0.2}
test: hst
policy: {kind: mc, alpha: 0.05, reps: 200}
reps: 200
seed: 7
"""

# TESTS


def test_parse_config():
    result = parse_sweep_config(CONFIG)
    assert isinstance(result, Ok)
    config = result.val
    assert config.spec.statistic is StatName.HST
    assert config.spec.policy == MCQuantile(0.05, 200)
    assert (config.reps, config.seed, config.threads, config.margin) == (200, 7, 1, 1.0)
    assert config.boundary is BoundaryCase.KNOWN_RATES
    assert [cell["p1"] for cell in config.grid.cells()] == [0.22, 0.5, 0.8]


def test_parse_optional_keys():
    text = CONFIG.replace("seed: 7", "boundary: unknown\nv2_denominator: centered\nt2_scaling: standardized")
    text = text.replace("test: hst", "test: hl2pt")
    config = parse_sweep_config(text).val
    assert config.seed == 0
    assert config.boundary is BoundaryCase.UNKNOWN_RATES
    assert config.spec.v2_denominator is V2Denominator.CENTERED
    assert config.spec.t2_scaling is T2Scaling.STANDARDIZED


@pytest.mark.parametrize(
    "text, message",
    [
        (CONFIG + "colour: red\n", "unknown keys: colour"),
        (CONFIG.replace("reps: 200\n", ""), "missing keys: reps"),
        ("axes: [1, 2", "invalid YAML"),
        ("- 1\n- 2\n", "must be a mapping"),
        (CONFIG.replace("kind: mc", "kind: bayes"), "unknown policy kind 'bayes'"),
        (CONFIG.replace("alpha: 0.05, ", ""), "missing parameter 'alpha'"),
        (CONFIG.replace("seed: 7", "boundary: exact"), "unknown boundary case"),
    ],
)
def test_config_errors(text, message):
    result = parse_sweep_config(text)
    assert isinstance(result, Err)
    assert message in result.err


def test_analytic_policy_needs_scan_statistic():
    text = CONFIG.replace("test: hst", "test: htdt").replace("kind: mc", "kind: analytic-known")
    result = parse_sweep_config(text)
    assert isinstance(result, Err)
    assert "HST" in result.err


def test_parse_policy():
    assert parse_policy({"kind": "fixed", "t": 3}) == Fixed(3.0)
    assert parse_policy({"kind": "gaussian", "alpha": 0.1}) == GaussianQuantile(0.1)
    assert parse_policy({"kind": "analytic-known"}) == AnalyticScanKnown(None)
    assert parse_policy({"kind": "MC", "alpha": 0.05}) == MCQuantile(0.05, 1000)


def test_load_config(tmp_path):
    path = tmp_path / "sweep.yaml"
    path.write_text(CONFIG, encoding="utf-8")
    assert isinstance(load_sweep_config(path), Ok)
    assert isinstance(load_sweep_config(tmp_path / "absent.yaml"), Err)
