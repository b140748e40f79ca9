"""Construction and replay of blocker vectors.

A blocker is a finitely supported vector certifying, at the scanned horizon,
that some orbit-decay property fails: its forward orbit keeps a coordinate of
size one (or a norm of at least one) along the tested shift counts.  Every
bundle records the inequalities it claims, and ``verify_bundle`` recomputes
all of them from the vector and an engine alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .analysis import ClassifierConfig
from .errors import HorizonExceededError, NoPairsFoundError, PreconditionUnmetError
from .products import ProductEngine, min_window_table
from .reporting import Report, Verdict, jsonable
from .shifts import SparseVector, SpaceSpec, apply_forward, lp
from .weights import SubseqSpec

__all__ = [
    "WitnessBundle",
    "build_uh_blocker",
    "build_sh_blocker",
    "build_kernel_truncation",
    "demo_ultra_convergence",
    "verify_bundle",
]

REL_TOL = 1e-12


@dataclass
class WitnessBundle:
    """A constructed vector plus the inequalities that make it a witness."""

    vector: SparseVector
    provenance: str
    selection: dict = field(default_factory=dict)
    inequalities: list[dict] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "provenance": self.provenance,
            "vector": self.vector.to_json_dict(),
            "selection": jsonable(self.selection),
            "inequalities": jsonable(self.inequalities),
            "config": jsonable(self.config),
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "WitnessBundle":
        return cls(
            vector=SparseVector.from_json_dict(data["vector"]),
            provenance=str(data["provenance"]),
            selection=dict(data.get("selection", {})),
            inequalities=[dict(r) for r in data.get("inequalities", [])],
            config=dict(data.get("config", {})),
        )


def _check_inequality(engine: ProductEngine, x: SparseVector, record: Mapping) -> tuple[bool, dict]:
    kind = record["kind"]
    if kind == "unit-coordinate":
        n = int(record["n"])
        index = int(record["index"])
        shifted = apply_forward(engine, x, n)
        got = shifted.entries.get(index, 0.0)
        return got == float(record.get("expected", 1.0)), {"got": got}
    if kind == "orbit-norm-at-least":
        n = int(record["n"])
        got = apply_forward(engine, x, n).norm()
        return got >= float(record["bound"]), {"got": got}
    if kind == "l1-norm-below":
        got = math.fsum(abs(v) for v in x.entries.values())
        return got < float(record["bound"]), {"got": got}
    if kind == "power-sum-matches":
        p = float(record["p"])
        got = math.fsum(abs(v) ** p for v in x.entries.values())
        target = float(record["value"])
        scale = max(abs(target), abs(got), 1e-300)
        return abs(got - target) <= REL_TOL * scale, {"got": got}
    raise ValueError(f"unknown inequality kind {kind!r}")


def verify_bundle(engine: ProductEngine, bundle: WitnessBundle) -> Report:
    """Recompute every recorded inequality from (vector, engine) alone."""
    failures = []
    for record in bundle.inequalities:
        ok, detail = _check_inequality(engine, bundle.vector, record)
        if not ok:
            failures.append({**dict(record), **detail})
    return Report(
        prop=f"witness:{bundle.provenance}",
        verdict=Verdict.EVIDENCE_FOR if not failures else Verdict.EVIDENCE_AGAINST,
        witnesses={"checked": len(bundle.inequalities), "failures": failures},
        config=dict(bundle.config),
        exact=engine.exact,
    )


def build_uh_blocker(
    engine: ProductEngine, nk: SubseqSpec, L: int, cfg: ClassifierConfig
) -> WitnessBundle:
    """Greedy blocker against uniform orbit decay along ``nk``.

    Selects strictly increasing starts ``i_l`` and shift counts ``n_{k_l}``
    with window(i_l, n_{k_l}) < 2**-l for l = 1..L, scanning shift counts
    outward and starts upward and accepting the first admissible pair.  The
    vector puts the small product itself at coordinate ``i_l - 1``, so the
    forward orbit at time n_{k_l} has an exact unit coordinate while the
    vector's l1 norm stays below 1.
    """
    if L < 0:
        raise ValueError("L must be >= 0")
    prefix = engine.prefix
    pairs: list[dict] = []
    last_i = 0
    last_k = 0
    for level in range(1, L + 1):
        found = None
        for k_pos in range(last_k + 1, len(nk.values) + 1):
            n = nk.values[k_pos - 1]
            i_hi = min(cfg.i_max, engine.horizon - n + 1)
            if i_hi <= last_i:
                continue
            window = prefix[n + last_i : n + i_hi] - prefix[last_i:i_hi]
            hits = np.nonzero(window < -level)[0]
            if hits.size:
                i = last_i + 1 + int(hits[0])
                found = {"l": level, "i": i, "k": k_pos, "n": n,
                         "log2_product": int(window[hits[0]]) if engine.exact else float(window[hits[0]])}
                break
        if found is None:
            raise NoPairsFoundError(
                f"no pair with product below 2**-{level} at horizon {engine.horizon}",
                completed=level - 1,
            )
        pairs.append(found)
        last_i, last_k = found["i"], found["k"]

    entries = {}
    for pair in pairs:
        value = (
            math.ldexp(1.0, pair["log2_product"])
            if engine.exact
            else 2.0 ** pair["log2_product"]
        )
        entries[pair["i"] - 1] = value
    vector = SparseVector(entries, lp(1))

    inequalities: list[dict] = [{"kind": "l1-norm-below", "bound": 1.0}]
    for pair in pairs:
        inequalities.append(
            {"kind": "unit-coordinate", "n": pair["n"], "index": pair["i"] - 1 + pair["n"], "expected": 1.0}
        )
    bundle = WitnessBundle(
        vector=vector,
        provenance="uh-blocker",
        selection={"pairs": pairs, "subsequence": nk.describe()},
        inequalities=inequalities,
        config={"L": L, "i_max": cfg.i_max, "horizon": engine.horizon},
    )
    report = verify_bundle(engine, bundle)
    if report.verdict is not Verdict.EVIDENCE_FOR:
        raise AssertionError(f"freshly built blocker failed verification: {report.witnesses}")
    return bundle


def build_sh_blocker(
    engine: ProductEngine,
    space: SpaceSpec,
    N: int,
    i_max: int,
    cfg: ClassifierConfig | None = None,
) -> WitnessBundle:
    """Blocker against per-vector orbit decay, from per-length window minima.

    For each n <= N take the smallest start attaining min_i window(i, n),
    group the lengths by that start v, and give coordinate v-1 the group's
    p-power sum root (lp) or group maximum (c0).  Every forward orbit norm up
    to N is then at least 1.  Preconditions: in lp the partial sum
    sum_n (min_i window(i, n))**p must be below 1; in c0 the minima must have
    decayed below the configured tolerance over the second half of 1..N.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    cfg = cfg or ClassifierConfig(horizon=N, i_max=i_max)
    mins, argmins = min_window_table(engine, N, i_max)
    min_values = [
        math.ldexp(1.0, int(v)) if engine.exact else 2.0 ** float(v) for v in mins
    ]

    if space.kind == "lp":
        p = float(space.p)
        partial = math.fsum(v**p for v in min_values)
        if partial >= 1.0:
            raise PreconditionUnmetError(
                f"partial sum of p-th powers is {partial}, not below 1", value=partial
            )
    else:
        tail = min_values[N // 2 :]
        worst = max(tail)
        if worst >= cfg.decay_tolerance:
            raise PreconditionUnmetError(
                f"window minima have not decayed below {cfg.decay_tolerance} "
                f"over the tail of 1..{N} (max {worst})",
                value=worst,
            )

    groups: dict[int, list[int]] = {}
    for n in range(1, N + 1):
        groups.setdefault(int(argmins[n - 1]), []).append(n)

    entries = {}
    for v, ns in groups.items():
        if space.kind == "lp":
            p = float(space.p)
            entries[v - 1] = math.fsum(min_values[n - 1] ** p for n in ns) ** (1.0 / p)
        else:
            entries[v - 1] = max(min_values[n - 1] for n in ns)
    vector = SparseVector(entries, space)

    inequalities: list[dict] = [
        {"kind": "orbit-norm-at-least", "n": n, "bound": 1.0} for n in range(1, N + 1)
    ]
    if space.kind == "lp":
        inequalities.append({"kind": "power-sum-matches", "p": float(space.p), "value": partial})
    bundle = WitnessBundle(
        vector=vector,
        provenance="sh-blocker",
        selection={
            "argmins": [int(v) for v in argmins],
            "groups": {str(v): ns for v, ns in sorted(groups.items())},
            "N": N,
            "i_max": i_max,
        },
        inequalities=inequalities,
        config={"space": space.label(), "horizon": engine.horizon, "i_max": i_max},
    )
    report = verify_bundle(engine, bundle)
    if report.verdict is not Verdict.EVIDENCE_FOR:
        raise AssertionError(f"freshly built blocker failed verification: {report.witnesses}")
    return bundle


def build_kernel_truncation(y: SparseVector, n: int) -> SparseVector:
    """Restrict y to coordinates below n; the result dies under n backward steps."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return SparseVector({i: v for i, v in y.entries.items() if i < n}, y.space)


def demo_ultra_convergence(
    engine: ProductEngine,
    nk: SubseqSpec,
    x: SparseVector,
    y: SparseVector,
    K: int,
) -> list[tuple[int, float]]:
    """Distances of the kernel-corrected forward orbit of x from the target y.

    For each of the first K shift counts n in ``nk`` the vector
    ``forward(x, n) + truncate(y, n) - y`` is formed; its norm measures how
    well the orbit, corrected inside the n-step kernel, approximates y.
    """
    if not x:
        raise ValueError("x must be nonzero")
    rows: list[tuple[int, float]] = []
    for n in nk.values[:K]:
        u = build_kernel_truncation(y, n)
        moved = apply_forward(engine, x, n)
        rows.append((n, moved.add(u).subtract(y).norm()))
    return rows
