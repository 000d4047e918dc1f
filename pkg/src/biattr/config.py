"""Work ceiling shared by the window oracles.

The ceiling bounds the number of symbols any single expansion may produce.
It is held in a context variable so concurrent callers can use different
limits.
"""
from __future__ import annotations

import contextlib
import contextvars

from .errors import ResourceLimitError

DEFAULT_CEILING = 10_000_000

_ceiling: contextvars.ContextVar[int] = contextvars.ContextVar(
    "biattr_ceiling", default=DEFAULT_CEILING
)


def get_ceiling() -> int:
    return _ceiling.get()


def set_ceiling(bound: int) -> None:
    if bound < 1:
        raise ValueError("ceiling must be positive")
    _ceiling.set(bound)


@contextlib.contextmanager
def work_ceiling(bound: int):
    """Temporarily run with a different work ceiling."""
    token = _ceiling.set(bound)
    try:
        yield
    finally:
        _ceiling.reset(token)


def charge(needed: int) -> None:
    """Raise :class:`ResourceLimitError` if ``needed`` exceeds the ceiling."""
    bound = _ceiling.get()
    if needed > bound:
        raise ResourceLimitError(needed, bound)
