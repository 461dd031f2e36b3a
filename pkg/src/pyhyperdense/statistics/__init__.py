"""Test statistics for dense sub-hypergraph detection.

Every statistic is a pure function of a hypergraph and invariant under
relabeling of the vertices.
"""

from pyhyperdense.statistics.common import StatName, StatValue, check_scan_size
from pyhyperdense.statistics.degree import (
    V2Denominator,
    hl2pt_stat,
    htdt_stat,
    loose_2path_moments,
    p0_hat,
    vertex_star_count,
)
from pyhyperdense.statistics.paths import (
    T2Scaling,
    core_counts,
    ht2pt_numerator,
    ht2pt_numerator_oracle,
    ht2pt_stat,
    loose_2path_pairs,
    tight_2path_count,
    tight_2path_pairs,
)
from pyhyperdense.statistics.scan import (
    CliqueNumber,
    clique_number,
    hcnt_has_clique,
    hst_oracle,
    hst_stat,
    hst_stat_greedy,
)

__all__ = [
    "CliqueNumber",
    "StatName",
    "StatValue",
    "T2Scaling",
    "V2Denominator",
    "check_scan_size",
    "clique_number",
    "core_counts",
    "hcnt_has_clique",
    "hl2pt_stat",
    "hst_oracle",
    "hst_stat",
    "hst_stat_greedy",
    "ht2pt_numerator",
    "ht2pt_numerator_oracle",
    "ht2pt_stat",
    "htdt_stat",
    "loose_2path_moments",
    "loose_2path_pairs",
    "p0_hat",
    "tight_2path_count",
    "tight_2path_pairs",
    "vertex_star_count",
]
