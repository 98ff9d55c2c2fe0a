"""Exception types shared across the package."""

import os


class ModdivError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ModdivError, ValueError):
    pass


class InvariantViolation(ModdivError, ValueError):
    """A constructed object fails one of its structural checks."""


class RingMismatch(ModdivError, ValueError):
    pass


class DimensionMismatch(ModdivError, ValueError):
    pass


class UnsupportedRing(ModdivError):
    pass


class InfiniteRingError(ModdivError):
    pass


class BudgetExceeded(ModdivError):
    def __init__(self, what: str, count: int, bound: int):
        super().__init__(f"{what}: {count} exceeds budget {bound}")
        self.what = what
        self.count = count
        self.bound = bound


class HypothesisViolation(ModdivError, ValueError):
    """An operation was called outside the hypotheses it needs."""


class InternalError(ModdivError, AssertionError):
    """A mathematically impossible outcome; indicates a bug."""


ELEMENT_BUDGET = 10**4
CANDIDATE_BUDGET = 10**6


def budget(default: int) -> int:
    """Budget ``default``, raised (never lowered) by ``MODDIV_BUDGET_OVERRIDE``."""
    raw = os.environ.get("MODDIV_BUDGET_OVERRIDE")
    if raw:
        try:
            return max(default, int(raw))
        except ValueError:
            pass
    return default
