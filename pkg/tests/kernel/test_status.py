import pytest

from pyhyperdense.kernel import (
    BUDGET_ENV_VAR,
    ENUMERATION_BUDGET,
    HdException,
    HdStatus,
    enumeration_budget,
)

from ..fixtures import *

# TESTS


def test_default_budget(no_budget_env):
    assert enumeration_budget() == ENUMERATION_BUDGET


def test_budget_override_wins(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, "500")
    assert enumeration_budget() == 500
    assert enumeration_budget(42) == 42


@pytest.mark.parametrize("raw", ["many", "-3", "0"])
def test_invalid_budget_env(monkeypatch: pytest.MonkeyPatch, raw: str):
    monkeypatch.setenv(BUDGET_ENV_VAR, raw)
    with pytest.raises(HdException) as exc_info:
        enumeration_budget()
    assert exc_info.value.status == HdStatus.CONFIG_ERROR


def test_usage_statuses():
    assert HdStatus.CONFIG_ERROR.is_usage_error
    assert HdStatus.CONSTRUCTION_ERROR.is_usage_error
    assert not HdStatus.BUDGET_EXCEEDED.is_usage_error
    assert not HdStatus.PARSE_ERROR.is_usage_error


def test_exception_rendering():
    exc = HdException(HdStatus.SIZE_GUARD, "too big")
    assert "SIZE_GUARD" in str(exc)
    assert exc.one_line() == "SIZE_GUARD: too big"
    assert HdException(HdStatus.RANGE_ERROR).one_line() == "RANGE_ERROR"
