"""Sequence-space vectors and the weighted shift actions.

Vector coordinates are 0-based (``x_0`` first) while weights are 1-based, so
the backward shift maps ``e_n`` to ``w_n * e_{n-1}`` and its right inverse
maps ``e_n`` to ``e_{n+1} / w_{n+1}``.  Iterated actions use window products:

* backward, n steps: ``(B^n x)_j = window(j+1, n) * x_{j+n}``
* forward, n steps:  ``(S^n x)_{k+n} = x_k / window(k+1, n)``

Coordinates are scaled with ``math.ldexp`` in dyadic mode, so multiplying or
dividing by a window product is exact in IEEE arithmetic; a forward step
followed by a backward step recovers the input bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .errors import ConfigError, HorizonExceededError
from .products import ProductEngine
from .weights import SubseqSpec

__all__ = [
    "SpaceSpec",
    "lp",
    "c0",
    "SparseVector",
    "norm",
    "apply_backward",
    "apply_forward",
    "orbit_norms",
]


@dataclass(frozen=True)
class SpaceSpec:
    """Either lp(p) for p >= 1 or c0 (sup norm on null sequences)."""

    kind: str  # "lp" | "c0"
    p: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("lp", "c0"):
            raise ConfigError(f"unknown space kind {self.kind!r}")
        if self.kind == "lp":
            if self.p is None or self.p < 1:
                raise ConfigError("lp space needs p >= 1")
        elif self.p is not None:
            raise ConfigError("c0 space takes no exponent")

    def norm_of(self, values: Iterable[float]) -> float:
        vals = [abs(v) for v in values]
        if not vals:
            return 0.0
        if self.kind == "c0":
            return max(vals)
        p = float(self.p)
        if p == 1.0:
            return math.fsum(vals)
        return math.fsum(v**p for v in vals) ** (1.0 / p)

    def label(self) -> str:
        return "c0" if self.kind == "c0" else f"l{self.p:g}"

    def to_json_dict(self) -> dict:
        if self.kind == "c0":
            return {"kind": "c0"}
        return {"kind": "lp", "p": float(self.p)}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SpaceSpec":
        if data["kind"] == "c0":
            return cls("c0")
        return cls("lp", float(data["p"]))


def lp(p: float) -> SpaceSpec:
    return SpaceSpec("lp", float(p))


def c0() -> SpaceSpec:
    return SpaceSpec("c0")


class SparseVector:
    """Finitely supported sequence-space element.

    Entries map 0-based coordinate indices to nonzero float values; zeros are
    dropped on construction.  Instances are treated as immutable.
    """

    __slots__ = ("entries", "space")

    def __init__(self, entries: Mapping[int, float] | Iterable[tuple[int, float]], space: SpaceSpec):
        items = entries.items() if isinstance(entries, Mapping) else entries
        cleaned: dict[int, float] = {}
        for idx, val in items:
            idx = int(idx)
            val = float(val)
            if idx < 0:
                raise ConfigError(f"coordinate index must be >= 0, got {idx}")
            if not math.isfinite(val):
                raise ConfigError(f"coordinate value must be finite, got {val}")
            if val != 0.0:
                cleaned[idx] = val
        self.entries = dict(sorted(cleaned.items()))
        self.space = space

    @classmethod
    def basis(cls, index: int, space: SpaceSpec) -> "SparseVector":
        return cls({index: 1.0}, space)

    @classmethod
    def zero(cls, space: SpaceSpec) -> "SparseVector":
        return cls({}, space)

    @property
    def support(self) -> list[int]:
        return list(self.entries)

    @property
    def max_index(self) -> int:
        return max(self.entries) if self.entries else -1

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.entries == other.entries and self.space == other.space

    def __repr__(self) -> str:
        return f"SparseVector({self.entries!r}, {self.space.label()})"

    def norm(self) -> float:
        return self.space.norm_of(self.entries.values())

    def scaled(self, factor: float) -> "SparseVector":
        return SparseVector({i: factor * v for i, v in self.entries.items()}, self.space)

    def add(self, other: "SparseVector") -> "SparseVector":
        merged = dict(self.entries)
        for i, v in other.entries.items():
            merged[i] = merged.get(i, 0.0) + v
        return SparseVector(merged, self.space)

    def subtract(self, other: "SparseVector") -> "SparseVector":
        return self.add(other.scaled(-1.0))

    def to_json_dict(self) -> dict:
        return {
            "space": self.space.to_json_dict(),
            "entries": [[i, v] for i, v in self.entries.items()],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SparseVector":
        space = SpaceSpec.from_json_dict(data["space"])
        return cls({int(i): float(v) for i, v in data["entries"]}, space)


def norm(x: SparseVector) -> float:
    """c0: sup of |coordinates|; lp: p-th root of the p-power sum."""
    return x.norm()


def _scale_by_window(value: float, log2_window: int | float, exact: bool, invert: bool) -> float:
    if exact:
        shift = -int(log2_window) if invert else int(log2_window)
        return math.ldexp(value, shift)
    factor = 2.0 ** float(log2_window)
    return value / factor if invert else value * factor


def apply_backward(engine: ProductEngine, x: SparseVector, n: int) -> SparseVector:
    """n-fold backward shift: coordinate j receives window(j+1, n) * x_{j+n}."""
    if n < 0:
        raise ConfigError("shift count must be >= 0")
    if n == 0:
        return x
    out: dict[int, float] = {}
    for idx, val in x.entries.items():
        if idx < n:
            continue
        j = idx - n
        lg = engine.log2_window(j + 1, n)
        out[j] = _scale_by_window(val, lg, engine.exact, invert=False)
    return SparseVector(out, x.space)


def apply_forward(engine: ProductEngine, x: SparseVector, n: int) -> SparseVector:
    """n-fold forward shift: coordinate k moves to k+n, divided by window(k+1, n)."""
    if n < 0:
        raise ConfigError("shift count must be >= 0")
    if n == 0:
        return x
    if x.entries and x.max_index + n > engine.horizon:
        raise HorizonExceededError(
            f"forward shift needs weights up to {x.max_index + n}, beyond horizon {engine.horizon}",
            needed=x.max_index + n,
            horizon=engine.horizon,
        )
    out: dict[int, float] = {}
    for idx, val in x.entries.items():
        lg = engine.log2_window(idx + 1, n)
        out[idx + n] = _scale_by_window(val, lg, engine.exact, invert=True)
    return SparseVector(out, x.space)


def orbit_norms(
    engine: ProductEngine,
    x: SparseVector,
    ns: Union[SubseqSpec, Sequence[int]],
) -> list[tuple[int, float]]:
    """Norm trajectory of the forward orbit along the given time indices."""
    values = ns.values if isinstance(ns, SubseqSpec) else tuple(int(v) for v in ns)
    return [(n, apply_forward(engine, x, n).norm()) for n in values]
