from __future__ import annotations

from collections.abc import Mapping
from enum import Enum
from typing import Any, NamedTuple, Optional

from pyhyperdense.hypergraph import UniformHypergraph
from pyhyperdense.kernel import HdException, HdStatus


class StatName(Enum):
    """Test statistics implemented by the package."""

    HTDT = "HTDT"
    """Total degree (edge count)."""
    HST = "HST"
    """Scan statistic: maximum edge count over n-subsets."""
    HCNT = "HCNT"
    """Clique indicator at size n."""
    HL2PT = "HL2PT"
    """Standardized loose 2-path (vertex star variance) statistic."""
    HT2PT = "HT2PT"
    """Standardized tight 2-path statistic."""

    @classmethod
    def parse(cls, text: str) -> StatName:
        try:
            return cls(text.upper())
        except ValueError:
            raise HdException(HdStatus.CONFIG_ERROR, f"Unknown statistic {text!r}!") from None


class StatValue(NamedTuple):
    """Value of a test statistic together with its intermediates.

    Aux keys per statistic:
        HTDT:   W
        HST:    W_n, subsets (exact) or restarts (greedy)
        HCNT:   nodes
        HL2PT:  p0_hat, p0, V1, V2
        HT2PT:  p0_hat, numerator, denominator
    """

    name: StatName
    """Which statistic."""
    value: float
    """Statistic value (0/1 for HCNT)."""
    aux: Mapping[str, float]
    """Intermediate quantities."""
    degenerate: bool = False
    """The estimated edge rate was 0 or 1 and the value was defined as 0."""
    approximate: bool = False
    """The value is a heuristic lower bound rather than the exact statistic."""
    witness: Optional[tuple[int, ...]] = None
    """Maximizing vertex set (HST) or clique found (HCNT), 0-based."""

    def to_record(self) -> dict[str, Any]:
        """JSON-friendly record with 1-based witness ids."""
        return {
            "name": self.name.value,
            "value": self.value,
            "aux": {key: float(val) for key, val in self.aux.items()},
            "degenerate": self.degenerate,
            "approximate": self.approximate,
            "witness": None if self.witness is None else [v + 1 for v in self.witness],
        }


def check_scan_size(graph: UniformHypergraph, n: int) -> None:
    if not graph.m <= n <= graph.N:
        raise HdException(
            HdStatus.DOMAIN_ERROR,
            f"Scan size must satisfy m <= n <= N, got m={graph.m}, n={n}, N={graph.N}!",
        )
