"""Detection of dense planted sub-hypergraphs in random uniform hypergraphs.

Samplers, test statistics, detection boundaries and a Monte-Carlo harness.
Errors are reported as 'HdException' with an 'HdStatus'; parsers return
'Ok'/'Err' results.
"""

from __future__ import annotations

from pyhyperdense.__about__ import VERSION
from pyhyperdense.boundaries import (
    BoundaryCase,
    BoundaryReport,
    Verdict,
    classify,
    hpc_boundary,
    hpc_threshold,
    known_boundary,
    regime_diagnostics,
    unknown_boundary,
)
from pyhyperdense.experiments import (
    AnalyticScanKnown,
    AnalyticScanUnknown,
    Decision,
    Fixed,
    GaussianQuantile,
    MCQuantile,
    RiskEstimate,
    SweepGrid,
    SweepRecord,
    TestSpec,
    calibrate_threshold,
    decide,
    estimate_risk,
    evaluate_statistic,
    sweep,
)
from pyhyperdense.hypergraph import (
    UniformHypergraph,
    format_edge_list,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from pyhyperdense.kernel import HdException, HdStatus
from pyhyperdense.models import (
    NullModel,
    PlantedModel,
    RngStream,
    calibrated_background,
    derive_stream,
    sample_null,
    sample_planted,
)
from pyhyperdense.result import Err, Ok, Result

__version__ = VERSION

__all__ = [
    "AnalyticScanKnown",
    "AnalyticScanUnknown",
    "BoundaryCase",
    "BoundaryReport",
    "Decision",
    "Err",
    "Fixed",
    "GaussianQuantile",
    "HdException",
    "HdStatus",
    "MCQuantile",
    "NullModel",
    "Ok",
    "PlantedModel",
    "Result",
    "RiskEstimate",
    "RngStream",
    "SweepGrid",
    "SweepRecord",
    "TestSpec",
    "UniformHypergraph",
    "Verdict",
    "calibrate_threshold",
    "calibrated_background",
    "classify",
    "decide",
    "derive_stream",
    "estimate_risk",
    "evaluate_statistic",
    "format_edge_list",
    "hpc_boundary",
    "hpc_threshold",
    "known_boundary",
    "parse_edge_list",
    "read_edge_list",
    "regime_diagnostics",
    "sample_null",
    "sample_planted",
    "sweep",
    "unknown_boundary",
    "write_edge_list",
]
