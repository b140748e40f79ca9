"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "ShiftDynError",
    "ConfigError",
    "NonPositiveWeightError",
    "HorizonExceededError",
    "IndexOverflowError",
    "NoPairsFoundError",
    "PreconditionUnmetError",
]


class ShiftDynError(Exception):
    """Base class for all shiftdyn errors."""


class ConfigError(ShiftDynError):
    """Invalid configuration: unknown key, malformed value, or oversized input."""


class NonPositiveWeightError(ShiftDynError):
    """A weight value was zero or negative; all weights must be > 0."""


class HorizonExceededError(ShiftDynError):
    """A window or index query fell outside the materialized horizon."""

    def __init__(self, message: str, *, needed: int | None = None, horizon: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.horizon = horizon


class IndexOverflowError(ShiftDynError):
    """A generated index exceeded the supported 63-bit index range."""


class NoPairsFoundError(ShiftDynError):
    """The greedy scan could not complete the requested selection of pairs."""

    def __init__(self, message: str, *, completed: int = 0):
        super().__init__(message)
        self.completed = completed


class PreconditionUnmetError(ShiftDynError):
    """A quantitative precondition failed; carries the offending value."""

    def __init__(self, message: str, *, value: float | None = None):
        super().__init__(message)
        self.value = value
