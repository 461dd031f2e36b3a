"""YAML sweep configuration.

Example:

    axes:
      p1: [0.22, 0.5, 0.8]
    fixed: {N: 20, m: 3, n: 10, p0: 0.2}
    test: hst
    policy: {kind: mc, alpha: 0.05, reps: 200}
    reps: 200
    seed: 0

Optional keys: boundary (known, unknown, hpc), margin, scan_n,
scan_fallback, randomize_ties, restarts, null_grid, v2_denominator,
t2_scaling, threads.
"""

from __future__ import annotations

from collections.abc import Mapping
from pathlib import Path
from typing import Any, Final, NamedTuple, Optional

import yaml

from pyhyperdense.boundaries import BoundaryCase
from pyhyperdense.experiments import (
    AnalyticScanKnown,
    AnalyticScanUnknown,
    Fixed,
    GaussianQuantile,
    MCQuantile,
    SweepGrid,
    TestSpec,
    ThresholdPolicy,
)
from pyhyperdense.kernel import HdException
from pyhyperdense.result import Err, LoadResult, Ok, read_text
from pyhyperdense.statistics import StatName, T2Scaling, V2Denominator

POLICY_KINDS: Final[tuple[str, ...]] = ("mc", "analytic-known", "analytic-unknown", "fixed", "gaussian")
BOUNDARY_CASES: Final[dict[str, BoundaryCase]] = {
    "known": BoundaryCase.KNOWN_RATES,
    "unknown": BoundaryCase.UNKNOWN_RATES,
    "hpc": BoundaryCase.HPC,
}

_REQUIRED: Final[tuple[str, ...]] = ("axes", "fixed", "test", "policy", "reps")
_OPTIONAL: Final[frozenset[str]] = frozenset(
    {
        "seed",
        "boundary",
        "margin",
        "scan_n",
        "scan_fallback",
        "randomize_ties",
        "restarts",
        "null_grid",
        "v2_denominator",
        "t2_scaling",
        "threads",
    }
)


class SweepConfig(NamedTuple):
    grid: SweepGrid
    spec: TestSpec
    reps: int
    seed: int = 0
    boundary: BoundaryCase = BoundaryCase.KNOWN_RATES
    margin: float = 1.0
    threads: int = 1


def parse_policy(raw: Mapping[str, Any]) -> ThresholdPolicy:
    """Build a threshold policy from {kind: ..., <parameters>}.

    Raises:
        HdException:    CONFIG_ERROR for unknown kinds or invalid parameters
        KeyError:       When a required parameter is missing
    """
    kind = str(raw.get("kind", "")).lower()
    if kind == "mc":
        return MCQuantile(float(raw["alpha"]), int(raw.get("reps", 1000)))
    if kind == "analytic-known":
        eta = raw.get("eta")
        return AnalyticScanKnown(None if eta is None else float(eta))
    if kind == "analytic-unknown":
        return AnalyticScanUnknown()
    if kind == "fixed":
        return Fixed(float(raw["t"]))
    if kind == "gaussian":
        return GaussianQuantile(float(raw["alpha"]))
    raise ValueError(f"unknown policy kind {kind!r}, expected one of {', '.join(POLICY_KINDS)}")


def _enum_option(enum_cls: Any, raw: Optional[str], default: Any) -> Any:
    if raw is None:
        return default
    for member in enum_cls:
        if member.name.lower() == str(raw).lower():
            return member
    raise ValueError(f"unknown {enum_cls.__name__} {raw!r}")


def _build(data: Mapping[str, Any]) -> SweepConfig:
    spec = TestSpec(
        statistic=StatName.parse(str(data["test"])),
        policy=parse_policy(data["policy"]),
        scan_n=None if data.get("scan_n") is None else int(data["scan_n"]),
        scan_fallback=bool(data.get("scan_fallback", False)),
        restarts=int(data.get("restarts", TestSpec.restarts)),
        randomize_ties=bool(data.get("randomize_ties", False)),
        v2_denominator=_enum_option(V2Denominator, data.get("v2_denominator"), V2Denominator.FACTORIAL),
        t2_scaling=_enum_option(T2Scaling, data.get("t2_scaling"), T2Scaling.DISPLAYED),
        null_grid=None if data.get("null_grid") is None else tuple(data["null_grid"]),
    )
    boundary = str(data.get("boundary", "known")).lower()
    if boundary not in BOUNDARY_CASES:
        raise ValueError(f"unknown boundary case {boundary!r}")
    return SweepConfig(
        grid=SweepGrid.from_mappings(data["axes"], data["fixed"]),
        spec=spec,
        reps=int(data["reps"]),
        seed=int(data.get("seed", 0)),
        boundary=BOUNDARY_CASES[boundary],
        margin=float(data.get("margin", 1.0)),
        threads=int(data.get("threads", 1)),
    )


def parse_sweep_config(text: str) -> LoadResult[SweepConfig]:
    """Parse the YAML text of a sweep configuration."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        return Err(f"invalid YAML: {exc}")
    if not isinstance(data, Mapping):
        return Err("sweep configuration must be a mapping")

    missing = [key for key in _REQUIRED if key not in data]
    if missing:
        return Err(f"missing keys: {', '.join(missing)}")
    unknown = sorted(set(data) - set(_REQUIRED) - _OPTIONAL)
    if unknown:
        return Err(f"unknown keys: {', '.join(map(str, unknown))}")
    if not isinstance(data["axes"], Mapping) or not isinstance(data["fixed"], Mapping):
        return Err("'axes' and 'fixed' must be mappings")
    if not isinstance(data["policy"], Mapping):
        return Err("'policy' must be a mapping with a 'kind' key")

    try:
        return Ok(_build(data))
    except HdException as exc:
        return Err(exc.msg or exc.status.name)
    except KeyError as exc:
        return Err(f"missing parameter {exc.args[0]!r}")
    except (TypeError, ValueError) as exc:
        return Err(str(exc))


def load_sweep_config(path: str | Path) -> LoadResult[SweepConfig]:
    return read_text(path).flat_map(parse_sweep_config)
