"""Exception hierarchy shared by every module."""


class BiattrError(Exception):
    """Base class for all errors raised by :mod:`biattr`."""


class ResourceLimitError(BiattrError, RuntimeError):
    """A computation needed more symbols than the configured work ceiling."""

    def __init__(self, needed, bound, reason=None):
        msg = f"work ceiling exceeded: needed {needed} symbols, bound is {bound}"
        super().__init__(f"{msg} ({reason})" if reason else msg)
        self.needed = needed
        self.bound = bound


class PreconditionError(BiattrError, ValueError):
    """An operation was called outside its stated domain."""


class SpecError(BiattrError, ValueError):
    """A bi-infinite word specification is malformed."""


class InvariantError(BiattrError, AssertionError):
    """An internal consistency check failed; this always indicates a bug."""
