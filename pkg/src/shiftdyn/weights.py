"""Weight sequence families and index subsequences.

Weights are indexed from 1 (``w_1`` is the first weight).  Every family is
deterministic: re-querying an index always returns the identical value, and a
regenerated sequence agrees with the original on every index.

Two dyadic families are built in:

* ``block`` -- weights in {2, 1, 1/2} arranged in blocks.  Odd-indexed blocks
  are runs of 2s of length (n+1)/2; even-indexed blocks consist of n/2 groups,
  each s_{n-1} ones followed by a single 1/2 (s_n is the cumulative length of
  blocks 1..n).
* ``diamond`` -- the self-similar recursion w_n = 2 for odd n and
  w_n = (2 * w_{n/2})**-1 for even n, so every weight is 2 or 1/4.

Dyadic sequences store the integer log2 of each weight, which makes every
downstream product identity an exact integer statement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import ConfigError, IndexOverflowError, NonPositiveWeightError

__all__ = [
    "MAX_INDEX",
    "MAX_LITERAL_VALUES",
    "Family",
    "Exactness",
    "Tail",
    "WeightSequence",
    "BlockPlan",
    "SubseqKind",
    "SubseqSpec",
    "gen_literal",
    "gen_block",
    "gen_diamond",
    "ak_sequence",
    "block_nk_sequence",
    "full_sequence",
    "diamond_scaled_sequence",
    "explicit_sequence",
    "block_plans",
    "block_cumulative_lengths",
]

# Largest index we let generated subsequences reach; matches signed 64-bit.
MAX_INDEX = 2**63 - 1

# Literal value lists beyond this are rejected to bound memory.
MAX_LITERAL_VALUES = 10**6

RationalLike = Union[int, float, str, Fraction]


class Family(str, Enum):
    LITERAL = "literal"
    BLOCK = "block"
    DIAMOND = "diamond"
    CUSTOM = "custom"


class Exactness(str, Enum):
    DYADIC_EXACT = "dyadic-exact"
    FLOAT_LOG = "float-log"


class Tail(str, Enum):
    ONES = "ones"
    PERIODIC_REPEAT = "repeat"


def _dyadic_exponent(value: Fraction) -> int | None:
    """Integer e with value == 2**e, or None if value is not a power of two."""
    num, den = value.numerator, value.denominator
    if num == 1 and den & (den - 1) == 0:
        return -(den.bit_length() - 1)
    if den == 1 and num & (num - 1) == 0:
        return num.bit_length() - 1
    return None


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, float):
        # Floats are converted exactly (binary value), so 0.5 -> 1/2.
        return Fraction(value)
    return Fraction(value)


@dataclass(frozen=True)
class BlockPlan:
    """Shape of one block of the block family.

    For odd ``index`` the block is ``twos`` 2s.  For even ``index`` it is
    ``halves`` groups of ``spacer_ones`` 1s followed by a single 1/2.
    """

    index: int
    length: int
    cumulative: int
    twos: int = 0
    halves: int = 0
    spacer_ones: int = 0


def block_plans() -> Iterator[BlockPlan]:
    """Yield block descriptors in order, starting with block 1."""
    cumulative = 0
    index = 0
    while True:
        index += 1
        if index % 2 == 1:
            twos = (index + 1) // 2
            length = twos
            cumulative += length
            yield BlockPlan(index, length, cumulative, twos=twos)
        else:
            halves = index // 2
            spacer = cumulative  # s_{index-1}
            length = halves * (spacer + 1)
            cumulative += length
            yield BlockPlan(index, length, cumulative, halves=halves, spacer_ones=spacer)


def block_cumulative_lengths(count: int) -> list[int]:
    """Return [s_1, ..., s_count] for the block family."""
    out: list[int] = []
    for plan in block_plans():
        out.append(plan.cumulative)
        if plan.cumulative > MAX_INDEX:
            raise IndexOverflowError(f"block cumulative length s_{plan.index} exceeds index range")
        if len(out) == count:
            return out
    raise AssertionError("unreachable")


class WeightSequence:
    """A positive weight stream with append-only cache of log2 weights.

    The cache is a numpy array ``a`` with ``a[j] == log2(w_{j+1})``; dtype is
    int64 for dyadic-exact families and float64 otherwise.  ``ensure`` grows
    the cache; existing entries are never altered.
    """

    def __init__(self, family: Family, params: dict, exactness: Exactness):
        self.family = family
        self.params = params
        self.exactness = exactness
        self._log2 = np.empty(0, dtype=np.int64 if self.is_dyadic else np.float64)

    # -- materialization ----------------------------------------------------

    @property
    def is_dyadic(self) -> bool:
        return self.exactness is Exactness.DYADIC_EXACT

    @property
    def horizon(self) -> int:
        """Number of weights currently materialized."""
        return int(self._log2.size)

    def ensure(self, horizon: int) -> None:
        """Materialize weights 1..horizon (no-op when already covered)."""
        if horizon <= self.horizon:
            return
        fresh = self._materialize(horizon)
        if self.horizon:
            # Families are deterministic, so regeneration preserves the prefix.
            fresh[: self.horizon] = self._log2
        self._log2 = fresh

    def _materialize(self, horizon: int) -> np.ndarray:
        if self.family is Family.BLOCK:
            return _block_log2(horizon)
        if self.family is Family.DIAMOND:
            return _diamond_log2(horizon)
        return _literal_log2(self.params["values"], self.params["tail"], horizon, self.is_dyadic)

    # -- queries -------------------------------------------------------------

    def log2_weight(self, n: int) -> int | float:
        if n < 1:
            raise IndexError(f"weight index must be >= 1, got {n}")
        self.ensure(n)
        raw = self._log2[n - 1]
        return int(raw) if self.is_dyadic else float(raw)

    def weight(self, n: int) -> float:
        e = self.log2_weight(n)
        return math.ldexp(1.0, e) if self.is_dyadic else 2.0 ** e

    def log2_array(self, horizon: int) -> np.ndarray:
        """View of log2 weights for indices 1..horizon."""
        self.ensure(horizon)
        return self._log2[:horizon]

    def describe(self) -> dict:
        return {"family": self.family.value, "exactness": self.exactness.value}


def _block_log2(horizon: int) -> np.ndarray:
    out = np.empty(horizon, dtype=np.int64)
    pos = 0
    for plan in block_plans():
        if plan.index % 2 == 1:
            end = min(pos + plan.twos, horizon)
            out[pos:end] = 1
            pos = end
        else:
            for _ in range(plan.halves):
                end = min(pos + plan.spacer_ones, horizon)
                out[pos:end] = 0
                pos = end
                if pos < horizon:
                    out[pos] = -1
                    pos += 1
                if pos >= horizon:
                    break
        if pos >= horizon:
            return out
    raise AssertionError("unreachable")


def _diamond_log2(horizon: int) -> np.ndarray:
    # e_n = 1 for odd n; e_n = -1 - e_{n/2} for even n.  Filling by the
    # 2-adic level of the index lets numpy do each level in one shot.
    e = np.empty(horizon + 1, dtype=np.int64)
    e[1::2] = 1
    step = 2
    while step <= horizon:
        idx = np.arange(step, horizon + 1, 2 * step)
        e[idx] = -1 - e[idx >> 1]
        step *= 2
    return e[1:]


def _literal_log2(values: tuple[Fraction, ...], tail: Tail, horizon: int, dyadic: bool) -> np.ndarray:
    if dyadic:
        head = np.array([_dyadic_exponent(v) for v in values], dtype=np.int64)
    else:
        head = np.array(
            [math.log2(v.numerator) - math.log2(v.denominator) for v in values],
            dtype=np.float64,
        )
    if horizon <= head.size:
        return head[:horizon].copy()
    if tail is Tail.PERIODIC_REPEAT:
        reps = -(-horizon // head.size)
        return np.tile(head, reps)[:horizon]
    out = np.zeros(horizon, dtype=head.dtype)
    out[: head.size] = head
    return out


def gen_literal(values: Sequence[RationalLike], tail: Tail = Tail.ONES) -> WeightSequence:
    """Weight sequence from an explicit list of positive rationals.

    Beyond the list, weights follow ``tail``: all 1s, or the list repeated
    periodically.  The sequence is dyadic-exact iff every value is an integer
    power of two.
    """
    if not values:
        raise ConfigError("literal weight list must be nonempty")
    if len(values) > MAX_LITERAL_VALUES:
        raise ConfigError(f"literal weight list longer than {MAX_LITERAL_VALUES} entries")
    fracs = tuple(_as_fraction(v) for v in values)
    for pos, frac in enumerate(fracs, start=1):
        if frac <= 0:
            raise NonPositiveWeightError(f"weight #{pos} is {frac}; weights must be > 0")
    dyadic = all(_dyadic_exponent(f) is not None for f in fracs)
    exactness = Exactness.DYADIC_EXACT if dyadic else Exactness.FLOAT_LOG
    params = {"values": fracs, "tail": tail}
    return WeightSequence(Family.LITERAL, params, exactness)


def gen_block(max_index: int) -> WeightSequence:
    """The block family, materialized through ``max_index`` weights."""
    if max_index < 1:
        raise ConfigError("max_index must be >= 1")
    seq = WeightSequence(Family.BLOCK, {}, Exactness.DYADIC_EXACT)
    seq.ensure(max_index)
    return seq


def gen_diamond(max_index: int) -> WeightSequence:
    """The diamond family, materialized through ``max_index`` weights."""
    if max_index < 1:
        raise ConfigError("max_index must be >= 1")
    seq = WeightSequence(Family.DIAMOND, {}, Exactness.DYADIC_EXACT)
    seq.ensure(max_index)
    return seq


class SubseqKind(str, Enum):
    FULL = "full"
    BLOCK_NK = "block-nk"
    DIAMOND_AK = "diamond-ak"
    DIAMOND_SCALED = "diamond-scaled"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class SubseqSpec:
    """A strictly increasing sequence of positive integer time indices."""

    kind: SubseqKind
    values: tuple[int, ...]
    scale_power: int = 0  # only meaningful for DIAMOND_SCALED

    def __post_init__(self) -> None:
        prev = 0
        for v in self.values:
            if v <= prev:
                raise ConfigError(f"subsequence values must be strictly increasing; got {self.values}")
            prev = v
        if prev > MAX_INDEX:
            raise IndexOverflowError(f"subsequence value {prev} exceeds index range")

    def truncated(self, max_value: int) -> "SubseqSpec":
        """Drop entries above ``max_value`` (kind and scale are preserved)."""
        kept = tuple(v for v in self.values if v <= max_value)
        return SubseqSpec(self.kind, kept, self.scale_power)

    def describe(self) -> dict:
        out = {"kind": self.kind.value, "count": len(self.values)}
        if self.kind is SubseqKind.DIAMOND_SCALED:
            out["scale_power"] = self.scale_power
        return out


def _ak_values(k_max: int) -> list[int]:
    out = []
    a = 1
    for _ in range(k_max):
        if a > MAX_INDEX:
            raise IndexOverflowError("a_k exceeds index range")
        out.append(a)
        a = 4 * a + 1
    return out


def ak_sequence(k_max: int) -> SubseqSpec:
    """a_1, ..., a_{k_max} with a_1 = 1 and a_k = 4*a_{k-1} + 1."""
    if k_max < 1:
        raise ConfigError("k_max must be >= 1")
    return SubseqSpec(SubseqKind.DIAMOND_AK, tuple(_ak_values(k_max)))


def block_nk_sequence(k_max: int) -> SubseqSpec:
    """s_3, s_5, ..., s_{2*k_max+1}: block-family cumulative lengths at odd blocks."""
    if k_max < 1:
        raise ConfigError("k_max must be >= 1")
    s = block_cumulative_lengths(2 * k_max + 1)
    return SubseqSpec(SubseqKind.BLOCK_NK, tuple(s[2 * k] for k in range(1, k_max + 1)))


def full_sequence(n_max: int) -> SubseqSpec:
    """1, 2, ..., n_max."""
    if n_max < 1:
        raise ConfigError("n_max must be >= 1")
    return SubseqSpec(SubseqKind.FULL, tuple(range(1, n_max + 1)))


def diamond_scaled_sequence(m: int, k_max: int) -> SubseqSpec:
    """4**m * a_k for k = 1..k_max."""
    if m < 0:
        raise ConfigError("m must be >= 0")
    scale = 4**m
    values = []
    for a in _ak_values(k_max):
        v = scale * a
        if v > MAX_INDEX:
            raise IndexOverflowError("scaled index exceeds index range")
        values.append(v)
    return SubseqSpec(SubseqKind.DIAMOND_SCALED, tuple(values), scale_power=m)


def explicit_sequence(values: Iterable[int]) -> SubseqSpec:
    return SubseqSpec(SubseqKind.EXPLICIT, tuple(int(v) for v in values))
