"""Shared status codes, the package exception and runtime limits."""

from __future__ import annotations

import os
from enum import IntEnum, auto
from typing import Final

MEMORY_CAP: Final[int] = 2**30
"""Default byte budget for the edge flags of one hypergraph."""

EDGE_FLAG_BYTES: Final[int] = 1
"""Storage per potential edge: one numpy bool, not one packed bit."""

ENUMERATION_BUDGET: Final[int] = 10**9
"""Default maximum number of subset visits for exhaustive searches."""

BUDGET_ENV_VAR: Final[str] = "PYHYPERDENSE_ENUM_BUDGET"

INT64_MAX: Final[int] = 2**63 - 1
UINT64_LIMIT: Final[int] = 2**64


class HdStatus(IntEnum):
    """Status codes attached to every error raised by the package."""

    OK = 0
    INVALID_SUBSET = auto()
    DOMAIN_ERROR = auto()
    ARITHMETIC_OVERFLOW = auto()
    CONSTRUCTION_ERROR = auto()
    RANGE_ERROR = auto()
    BUDGET_EXCEEDED = auto()
    SIZE_GUARD = auto()
    CALIBRATION_INFEASIBLE = auto()
    CONFIG_ERROR = auto()
    PARSE_ERROR = auto()
    RAGGED_GRID = auto()

    @property
    def is_usage_error(self) -> bool:
        """Does the status describe bad input parameters (as opposed to a runtime failure)?"""
        return self in _USAGE_STATUSES


_USAGE_STATUSES: Final[frozenset[HdStatus]] = frozenset(
    {
        HdStatus.INVALID_SUBSET,
        HdStatus.DOMAIN_ERROR,
        HdStatus.CONSTRUCTION_ERROR,
        HdStatus.RANGE_ERROR,
        HdStatus.CALIBRATION_INFEASIBLE,
        HdStatus.CONFIG_ERROR,
    }
)


class HdException(Exception):
    """Exception raised by pyhyperdense operations.

    Attributes:
        status:     Status code classifying the failure
        msg:        Optional human-readable message
    """

    status: HdStatus
    msg: str | None

    def __init__(self, status: HdStatus, msg: str | None = None):
        super().__init__()
        self.status = status
        self.msg = msg

    def __str__(self) -> str:
        return f"""
Error in pyhyperdense.
Status: {self.status.name}
Message: {self.msg}
        """

    def one_line(self) -> str:
        """Render the error as a single diagnostic line."""
        return f"{self.status.name}: {self.msg}" if self.msg else self.status.name


def enumeration_budget(override: int | None = None) -> int:
    """Resolve the enumeration budget in effect.

    Args:
        override:       Explicit per-call budget (takes precedence)

    Raises:
        HdException:    If the environment override is not a positive integer

    Returns:
        int:            Maximum number of subset visits
    """
    if override is not None:
        if override <= 0:
            raise HdException(HdStatus.CONFIG_ERROR, "Enumeration budget must be positive!")
        return override

    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None or raw.strip() == "":
        return ENUMERATION_BUDGET

    try:
        value = int(float(raw))
    except ValueError:
        raise HdException(
            HdStatus.CONFIG_ERROR, f"{BUDGET_ENV_VAR}={raw!r} is not an integer!"
        ) from None
    if value <= 0:
        raise HdException(HdStatus.CONFIG_ERROR, f"{BUDGET_ENV_VAR} must be positive!")
    return value
