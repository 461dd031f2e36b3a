"""Ok/Err values for loaders and Monte-Carlo replications.

Edge lists, sweep configurations and record files are loaded into a
'LoadResult' whose error side is a message (or an 'EdgeListError'). A
replication that raised 'HdException' is kept as an 'Err' so the harness can
count failures instead of aborting the first worker that hits one.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Generic, NoReturn, TypeVar, Union

from typing_extensions import Self, TypeAlias

from pyhyperdense.kernel import HdException

E = TypeVar("E")
R = TypeVar("R")
T = TypeVar("T")
U = TypeVar("U")


@dataclass(frozen=True)
class Ok(Generic[T]):
    """A loaded object or a finished replication's outcome."""

    val: T

    def map(self, fun: Callable[[T], R]) -> Ok[R]:
        return Ok(fun(self.val))

    def map_err(self, _: Callable[[Any], Any]) -> Self:
        return self

    def flat_map(self, fun: Callable[[T], Union[Ok[U], Err[R]]]) -> Union[Ok[U], Err[R]]:
        """Feed the value into the next fallible step (text -> parser)."""
        return fun(self.val)

    def unwrap(self, fun: Callable[[Any], Exception] = ValueError) -> T:
        return self.val

    def unwrap_or(self, _: Any) -> T:
        return self.val

    __rshift__ = flat_map


@dataclass(frozen=True)
class Err(Generic[E]):
    """Why a file could not be loaded or a replication failed.

    The payload is a message, an 'EdgeListError' or the 'HdException' a
    statistic raised; it is only raised again by 'unwrap'.
    """

    err: E

    def map(self, _: Callable[[Any], Any]) -> Self:
        return self

    def map_err(self, fun: Callable[[E], R]) -> Err[R]:
        return Err(fun(self.err))

    def flat_map(self, _: Callable[[Any], Any]) -> Self:
        return self

    def unwrap(self, fun: Callable[[E], Exception] = ValueError) -> NoReturn:
        """Raise the exception built from the failure.

        Args:
            fun:    Converter from the payload to an exception, e.g. 'parse_error'

        Raises:
            Exception:  Whatever ``fun`` returns
        """
        raise fun(self.err)

    def unwrap_or(self, default: T) -> T:
        return default

    __rshift__ = flat_map


Result: TypeAlias = Union[Ok[T], Err[E]]

LoadResult: TypeAlias = Union[Ok[T], Err[str]]
"""Loaded object or a one-line message naming the file and the problem."""

Replication: TypeAlias = Union[Ok[T], Err[HdException]]
"""Outcome of one Monte-Carlo replication."""


def read_text(path: str | Path) -> LoadResult[str]:
    try:
        return Ok(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        return Err(f"cannot read {path}: {exc.strerror}")


def attempt(fun: Callable[..., T], *args: Any) -> Replication[T]:
    """Run one replication step, keeping an 'HdException' as the failure.

    Other exceptions are programming errors and propagate.
    """
    try:
        return Ok(fun(*args))
    except HdException as exc:
        return Err(exc)


def split_failures(
    outcomes: Sequence[Replication[T]],
) -> tuple[list[T], list[tuple[int, HdException]]]:
    """Successful values in order, and the failed replications with their index."""
    values: list[T] = []
    failures: list[tuple[int, HdException]] = []
    for idx, outcome in enumerate(outcomes):
        if isinstance(outcome, Ok):
            values.append(outcome.val)
        else:
            failures.append((idx, outcome.err))
    return values, failures
