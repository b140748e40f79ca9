"""Window products of consecutive weights via prefix sums in log2 domain.

``window (i, n)`` denotes the product ``w_i * w_{i+1} * ... * w_{i+n-1}``.
The engine stores prefix sums ``L[k] = sum(log2 w_j, j <= k)`` with
``L[0] = 0``, so a window product is the single difference
``L[i+n-1] - L[i-1]``: O(1) per query, exact integer arithmetic for dyadic
sequences, compensated float summation otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import HorizonExceededError
from .reporting import Report, Verdict
from .weights import WeightSequence

__all__ = [
    "Log2Value",
    "ProductEngine",
    "product",
    "verify_product_formula",
    "min_product_over_i",
    "min_window_table",
    "scan_m1",
    "ScanTable",
]


@dataclass(frozen=True, order=True)
class Log2Value:
    """A positive real stored as its base-2 logarithm.

    ``exact`` means ``log2`` is an integer and the value is exactly a power of
    two.  Multiplying two values adds their logs; exactness survives only when
    both operands are exact.  Ordering compares logs, which matches ordering
    of the represented reals.
    """

    log2: int | float
    exact: bool = True

    @property
    def value(self) -> float:
        """The represented positive real as a float (inf on overflow)."""
        if self.exact:
            try:
                return math.ldexp(1.0, int(self.log2))
            except OverflowError:
                return math.inf
        return 2.0 ** float(self.log2)

    def __mul__(self, other: "Log2Value") -> "Log2Value":
        if self.exact and other.exact:
            return Log2Value(int(self.log2) + int(other.log2), True)
        return Log2Value(float(self.log2) + float(other.log2), False)

    def __truediv__(self, other: "Log2Value") -> "Log2Value":
        if self.exact and other.exact:
            return Log2Value(int(self.log2) - int(other.log2), True)
        return Log2Value(float(self.log2) - float(other.log2), False)

    def reciprocal(self) -> "Log2Value":
        return Log2Value(-self.log2, self.exact)

    def __float__(self) -> float:
        return self.value


def _compensated_prefix(terms: np.ndarray) -> np.ndarray:
    """Prefix sums with Kahan compensation; out[0] = 0."""
    out = np.empty(terms.size + 1, dtype=np.float64)
    out[0] = 0.0
    total = 0.0
    comp = 0.0
    for pos, term in enumerate(terms.tolist(), start=1):
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        out[pos] = t
    return out


class ProductEngine:
    """Read-only window-product queries over a materialized weight sequence."""

    def __init__(self, source: WeightSequence, horizon: int):
        if horizon < 1:
            raise HorizonExceededError("engine horizon must be >= 1", needed=1, horizon=horizon)
        source.ensure(horizon)
        logs = source.log2_array(horizon)
        self.source = source
        self.horizon = horizon
        self.exact = source.is_dyadic
        if self.exact:
            self.prefix = np.concatenate([np.zeros(1, dtype=np.int64), np.cumsum(logs)])
        else:
            self.prefix = _compensated_prefix(logs)
        self._min_log2_weight = logs.min()
        self._max_log2_weight = logs.max()

    def _check_window(self, i: int, n: int) -> None:
        if i < 1 or n < 1:
            raise HorizonExceededError(f"window start i={i} and length n={n} must be >= 1")
        if i + n - 1 > self.horizon:
            raise HorizonExceededError(
                f"window ({i}, {n}) ends at {i + n - 1}, beyond horizon {self.horizon}",
                needed=i + n - 1,
                horizon=self.horizon,
            )

    def log2_window(self, i: int, n: int) -> int | float:
        """log2 of the window product; int in dyadic mode."""
        self._check_window(i, n)
        raw = self.prefix[i + n - 1] - self.prefix[i - 1]
        return int(raw) if self.exact else float(raw)

    def product(self, i: int, n: int) -> Log2Value:
        return Log2Value(self.log2_window(i, n), self.exact)

    def weight_log2_bounds(self) -> tuple[int | float, int | float]:
        """(min, max) of log2 w_n over the horizon."""
        cast = int if self.exact else float
        return cast(self._min_log2_weight), cast(self._max_log2_weight)

    def describe(self) -> dict:
        return {"horizon": self.horizon, **self.source.describe()}


def product(engine: ProductEngine, i: int, n: int) -> Log2Value:
    """The product of n consecutive weights starting at w_i."""
    return engine.product(i, n)


def verify_product_formula(
    engine: ProductEngine,
    samples: Iterable[tuple[int, int, int]],
    tolerance: float = 1e-9,
) -> Report:
    """Check the split/merge law for window products on sampled triples.

    For each sample ``(i, j, n)`` with ``i < j`` the law states that
    window(i, n) * window(i+n, j-i) == window(i, n+j-i) == window(i, j-i) * window(j, n).
    Dyadic engines must satisfy it with zero log2 discrepancy; float engines
    within ``tolerance`` in log2 domain.
    """
    failures: list[dict] = []
    max_disc = 0.0
    checked = 0
    for i, j, n in samples:
        if not i < j:
            raise ValueError(f"samples need i < j, got ({i}, {j})")
        whole = engine.log2_window(i, n + j - i)
        left = engine.log2_window(i, n) + engine.log2_window(i + n, j - i)
        right = engine.log2_window(i, j - i) + engine.log2_window(j, n)
        disc = max(abs(left - whole), abs(right - whole))
        max_disc = max(max_disc, disc)
        ok = disc == 0 if engine.exact else disc <= tolerance
        if not ok and len(failures) < 10:
            failures.append({"i": i, "j": j, "n": n, "log2_discrepancy": disc})
        checked += 1
    verdict = Verdict.EVIDENCE_FOR if not failures else Verdict.EVIDENCE_AGAINST
    return Report(
        prop="product-split-law",
        verdict=verdict,
        witnesses={"checked": checked, "max_log2_discrepancy": max_disc, "failures": failures},
        config={"tolerance": 0.0 if engine.exact else tolerance, "horizon": engine.horizon},
        exact=engine.exact,
    )


def min_product_over_i(engine: ProductEngine, n: int, i_max: int) -> tuple[Log2Value, int]:
    """Minimum of window(i, n) over 1 <= i <= i_max, with the smallest argmin."""
    if i_max < 1:
        raise HorizonExceededError("i_max must be >= 1")
    engine._check_window(i_max, n)
    diffs = engine.prefix[n : i_max + n] - engine.prefix[0:i_max]
    pos = int(np.argmin(diffs))  # first occurrence: smallest i
    raw = diffs[pos]
    return Log2Value(int(raw) if engine.exact else float(raw), engine.exact), pos + 1


def min_window_table(
    engine: ProductEngine, n_max: int, i_max: int
) -> tuple[np.ndarray, np.ndarray]:
    """Per-length minima: for each n <= n_max, min over i <= i_max of window(i, n).

    Returns (mins, argmins) where mins[n-1] is the log2 minimum and
    argmins[n-1] the smallest attaining i.  Requires i_max + n_max - 1 within
    the horizon.
    """
    if n_max < 1 or i_max < 1:
        raise HorizonExceededError("n_max and i_max must be >= 1")
    engine._check_window(i_max, n_max)
    prefix = engine.prefix
    mins = prefix[1 : n_max + 1].copy()  # i = 1 row
    argmins = np.ones(n_max, dtype=np.int64)
    for i in range(2, i_max + 1):
        cand = prefix[i : i + n_max] - prefix[i - 1]
        better = cand < mins
        if better.any():
            mins[better] = cand[better]
            argmins[better] = i
    return mins, argmins


@dataclass
class ScanTable:
    """Scan of the leading products ``window(1, n)`` for n = 1..n_max."""

    log2_m1: np.ndarray  # log2_m1[n-1] = log2 window(1, n)
    exact: bool

    @property
    def n_max(self) -> int:
        return int(self.log2_m1.size)

    @property
    def max_log2(self) -> int | float:
        raw = self.log2_m1.max()
        return int(raw) if self.exact else float(raw)

    @property
    def argmax(self) -> int:
        """Smallest n attaining the maximum."""
        return int(np.argmax(self.log2_m1)) + 1

    def running_max(self) -> np.ndarray:
        return np.maximum.accumulate(self.log2_m1)

    def unity_indices(self) -> np.ndarray | None:
        """All n with window(1, n) == 1 exactly; None for float engines."""
        if not self.exact:
            return None
        return np.nonzero(self.log2_m1 == 0)[0] + 1

    def rows(self) -> Iterator[tuple[int, int | float]]:
        cast = int if self.exact else float
        for pos, raw in enumerate(self.log2_m1, start=1):
            yield pos, cast(raw)


def scan_m1(engine: ProductEngine, n_max: int) -> ScanTable:
    """Table of leading products window(1, n) for n = 1..n_max."""
    engine._check_window(1, n_max)
    return ScanTable(log2_m1=engine.prefix[1 : n_max + 1], exact=engine.exact)
