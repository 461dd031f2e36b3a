import pytest

from pyhyperdense.kernel import HdException, HdStatus
from pyhyperdense.result import (
    Err,
    LoadResult,
    Ok,
    attempt,
    read_text,
    split_failures,
)

from ..fixtures import *

# TESTS


def test_ok_chain():
    res = Ok(3).map(lambda v: v * 2) >> (lambda v: Ok(v + 1))
    assert res == Ok(7)
    assert res.unwrap() == 7
    assert res.map_err(str) == res


def test_err_short_circuits():
    res = Err("bad").map(lambda v: v * 2) >> (lambda v: Ok(v + 1))
    assert res == Err("bad")
    assert res.unwrap_or(0) == 0
    assert res.map_err(str.upper) == Err("BAD")


def test_err_unwrap_builds_exception():
    with pytest.raises(KeyError):
        Err("missing").unwrap(KeyError)


def test_read_text(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("# hypergraph N=3 m=2\n", encoding="utf-8")
    assert read_text(path) == Ok("# hypergraph N=3 m=2\n")

    missing = read_text(tmp_path / "nope.txt")
    assert isinstance(missing, Err)
    assert missing.err.startswith("cannot read")
    assert "nope.txt" in missing.err


def test_load_result_alias_is_generic():
    assert LoadResult[int] == LoadResult[int]
    assert LoadResult[int] != LoadResult[str]


def test_attempt_keeps_package_errors():
    def statistic(budget: int) -> float:
        if budget < 10:
            raise HdException(HdStatus.BUDGET_EXCEEDED, "too many subsets")
        return 1.5

    assert attempt(statistic, 100) == Ok(1.5)
    failed = attempt(statistic, 5)
    assert isinstance(failed, Err)
    assert failed.err.status == HdStatus.BUDGET_EXCEEDED

    with pytest.raises(ZeroDivisionError):
        attempt(lambda: 1 / 0)


def test_split_failures():
    first = HdException(HdStatus.BUDGET_EXCEEDED, "first")
    second = HdException(HdStatus.DOMAIN_ERROR, "second")
    values, failures = split_failures([Ok(1.0), Err(first), Ok(2.0), Err(second)])
    assert values == [1.0, 2.0]
    assert failures == [(1, first), (3, second)]
    assert split_failures([]) == ([], [])
