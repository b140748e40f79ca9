"""Finite-horizon classifiers and exact identity suites.

The dynamical conditions being classified are asymptotic (suprema, limits,
infima over all indices), so every verdict here is *evidence at a declared
horizon*, never a proof:

* "sup grows without bound" becomes: the maximum over the scanned range
  reaches a configured threshold;
* "tends to infinity" becomes: no value in a tail window falls below the
  threshold;
* "infimum positive" becomes: the scanned minimum stays above a configured
  decay tolerance.

All checks on dyadic sequences are exact integer-log2 computations with zero
tolerance; reports record the witnesses needed to recompute any failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ConfigError, HorizonExceededError
from .products import ProductEngine, min_product_over_i, min_window_table, scan_m1
from .reporting import Report, Verdict
from .shifts import SpaceSpec
from .weights import SubseqKind, SubseqSpec, ak_sequence, block_nk_sequence

__all__ = [
    "ClassifierConfig",
    "GrowthProfile",
    "profile_from_name",
    "check_hypercyclic",
    "check_mixing",
    "check_ultra_conditions",
    "check_strong_necessary",
    "check_strong_sufficient",
    "verify_diamond_identities",
    "verify_block_facts",
    "verify_lemma_comparability",
]

# For weighted backward shifts, hypercyclicity and weak mixing coincide; the
# hypercyclicity report carries this as an annotation rather than a separate
# computation.
WEAK_MIXING_NOTE = "weak mixing is equivalent to hypercyclicity for weighted backward shifts"


@dataclass(frozen=True)
class ClassifierConfig:
    """Scan bounds and surrogate thresholds for the classifiers.

    ``horizon`` is the largest shift count n scanned; ``i_max`` the largest
    window start; ``log2_threshold`` the growth threshold in log2 domain;
    ``tail_window`` the width W of tail scans (None picks per-check defaults:
    nearly the whole range for the mixing check, horizon/4 for the sup-norm
    tail surrogate); ``decay_tolerance`` the positive floor below which a
    scanned infimum counts as decayed.
    """

    horizon: int
    i_max: int = 10_000
    log2_threshold: float = 5.0
    tail_window: int | None = None
    decay_tolerance: float = 2.0**-10

    def __post_init__(self) -> None:
        if self.horizon < 1 or self.i_max < 1:
            raise ConfigError("horizon and i_max must be >= 1")
        if self.tail_window is not None and self.tail_window < 1:
            raise ConfigError("tail_window must be >= 1 when given")
        if self.decay_tolerance <= 0:
            raise ConfigError("decay_tolerance must be > 0")

    def mixing_window(self) -> int:
        # Nearly the full range by default: recurring dips in the scanned
        # sequences are doubly-exponentially sparse, so any fixed-fraction
        # window can straddle a gap and forget an earlier witness.  Scanning
        # [burn-in, H] keeps witnessed negative verdicts stable under
        # horizon growth.
        if self.tail_window is not None:
            return self.tail_window
        return max(1, self.horizon - 16)

    def c0_tail_window(self) -> int:
        if self.tail_window is not None:
            return self.tail_window
        return max(1, self.horizon // 4)

    def describe(self) -> dict:
        return {
            "horizon": self.horizon,
            "i_max": self.i_max,
            "log2_threshold": self.log2_threshold,
            "tail_window": self.tail_window,
            "decay_tolerance": self.decay_tolerance,
        }


def _require_scan(engine: ProductEngine, needed: int) -> None:
    if needed > engine.horizon:
        raise HorizonExceededError(
            f"scan needs horizon {needed}, engine has {engine.horizon}",
            needed=needed,
            horizon=engine.horizon,
        )


def check_hypercyclic(engine: ProductEngine, cfg: ClassifierConfig) -> Report:
    """Growth surrogate: does max_n window(1, n) reach the threshold?"""
    _require_scan(engine, cfg.horizon)
    table = scan_m1(engine, cfg.horizon)
    max_log2 = table.max_log2
    holds = max_log2 >= cfg.log2_threshold
    return Report(
        prop="hypercyclic",
        verdict=Verdict.EVIDENCE_FOR if holds else Verdict.EVIDENCE_AGAINST,
        witnesses={"max_log2": max_log2, "argmax_n": table.argmax, "annotation": WEAK_MIXING_NOTE},
        config=cfg.describe(),
        exact=engine.exact,
    )


def check_mixing(engine: ProductEngine, cfg: ClassifierConfig) -> Report:
    """Tail surrogate: any window(1, n) below threshold inside the tail window?"""
    _require_scan(engine, cfg.horizon)
    w = cfg.mixing_window()
    lo = max(1, cfg.horizon - w)
    segment = engine.prefix[lo : cfg.horizon + 1]
    below = np.nonzero(segment < cfg.log2_threshold)[0]
    if below.size:
        n = lo + int(below[0])
        value = segment[below[0]]
        return Report(
            prop="mixing",
            verdict=Verdict.EVIDENCE_AGAINST,
            witnesses={"n": n, "log2_m1n": int(value) if engine.exact else float(value)},
            config={**cfg.describe(), "scan_from": lo},
            exact=engine.exact,
        )
    tail_min = segment.min()
    return Report(
        prop="mixing",
        verdict=Verdict.EVIDENCE_FOR,
        witnesses={"tail_min_log2": int(tail_min) if engine.exact else float(tail_min)},
        config={**cfg.describe(), "scan_from": lo},
        exact=engine.exact,
    )


def _ultra_min_scan(
    engine: ProductEngine, nk: SubseqSpec, cfg: ClassifierConfig
) -> tuple[float, int, int]:
    """(min log2 over all (i, n_k), argmin i, argmin n_k)."""
    if nk.kind is SubseqKind.FULL:
        mins, argmins = min_window_table(engine, nk.values[-1], cfg.i_max)
        pos = int(np.argmin(mins))
        return float(mins[pos]), int(argmins[pos]), pos + 1
    best: float | None = None
    best_i = best_n = 0
    for n in nk.values:
        value, i = min_product_over_i(engine, n, cfg.i_max)
        if best is None or float(value.log2) < best:
            best, best_i, best_n = float(value.log2), i, n
    return best, best_i, best_n


def check_ultra_conditions(engine: ProductEngine, nk: SubseqSpec, cfg: ClassifierConfig) -> Report:
    """Three-part surrogate along a subsequence of shift counts.

    (1) the minimum weight over the horizon is positive, (2) window(1, n_k)
    reaches the growth threshold by the last k, and (3) the minimum of
    window(i, n_k) over i <= i_max and all k stays at or above the decay
    tolerance.  For each n_k whose doubled window fits the horizon, the report
    also records whether window(n_k+1, n_k) * window(1, n_k)**2 == 1 exactly;
    such pairs pin the scanned minimum to the inverse square of the leading
    product.
    """
    if not nk.values:
        raise ConfigError("subsequence must be nonempty")
    _require_scan(engine, nk.values[-1] + cfg.i_max - 1)

    min_w, max_w = engine.weight_log2_bounds()
    cond_weights = True  # materialized weights are positive by construction

    growth = [
        (pos, n, engine.log2_window(1, n)) for pos, n in enumerate(nk.values, start=1)
    ]
    last_log2 = growth[-1][2]
    cond_growth = last_log2 >= cfg.log2_threshold

    r_log2, r_i, r_n = _ultra_min_scan(engine, nk, cfg)
    r_value = math.ldexp(1.0, int(r_log2)) if engine.exact else 2.0 ** r_log2
    cond_floor = r_value >= cfg.decay_tolerance

    inverse_square_pairs = []
    for n in nk.values:
        if 2 * n > engine.horizon:
            continue
        residual = engine.log2_window(n + 1, n) + 2 * engine.log2_window(1, n)
        if residual == 0:
            inverse_square_pairs.append({"i": n + 1, "n": n})

    holds = cond_weights and cond_growth and cond_floor
    failed = [
        name
        for name, ok in (
            ("positive-weights", cond_weights),
            ("growth", cond_growth),
            ("window-floor", cond_floor),
        )
        if not ok
    ]
    return Report(
        prop="ultra",
        verdict=Verdict.EVIDENCE_FOR if holds else Verdict.EVIDENCE_AGAINST,
        witnesses={
            "min_weight_log2": min_w,
            "max_weight_log2": max_w,
            "growth_last": {"n": growth[-1][1], "log2": last_log2},
            "floor": {"log2": int(r_log2) if engine.exact else r_log2, "i": r_i, "n": r_n},
            "inverse_square_pairs": inverse_square_pairs,
            "failed_conditions": failed,
            "subsequence": nk.describe(),
        },
        config=cfg.describe(),
        exact=engine.exact,
    )


def check_strong_necessary(engine: ProductEngine, space: SpaceSpec, cfg: ClassifierConfig) -> Report:
    """Surrogates for the per-length infimum condition.

    lp: partial sums of (min_i window(i, n))**p must keep growing; the
    declared heuristic compares the sum over [H/2, H] against [H/4, H/2]
    (ratio >= 1 reads as divergence evidence, a collapsing ratio as
    summability evidence, anything between is inconclusive).
    c0: the maximum of min_i window(i, n) over a tail window stands in for
    the limsup and is compared against the decay tolerance.
    """
    _require_scan(engine, cfg.horizon + cfg.i_max - 1)
    mins, argmins = min_window_table(engine, cfg.horizon, cfg.i_max)
    mins_f = mins.astype(np.float64)

    if space.kind == "c0":
        w = cfg.c0_tail_window()
        lo = max(1, cfg.horizon - w)
        tail = mins_f[lo - 1 :]
        pos = int(np.argmax(tail))
        tail_max = 2.0 ** float(tail[pos])
        holds = tail_max >= cfg.decay_tolerance
        return Report(
            prop="strong-necessary",
            verdict=Verdict.EVIDENCE_FOR if holds else Verdict.EVIDENCE_AGAINST,
            witnesses={
                "space": space.label(),
                "tail_max": tail_max,
                "tail_max_n": lo + pos,
                "tail_from": lo,
            },
            config=cfg.describe(),
            exact=engine.exact,
        )

    p = float(space.p)
    if cfg.horizon < 4:
        raise ConfigError("lp divergence heuristic needs horizon >= 4")
    log2_terms = p * mins_f
    quarter, half = cfg.horizon // 4, cfg.horizon // 2
    # A single astronomically large term already certifies growth and would
    # overflow float accumulation.
    if log2_terms[quarter:].max() >= 500.0:
        n_big = quarter + int(np.argmax(log2_terms[quarter:])) + 1
        return Report(
            prop="strong-necessary",
            verdict=Verdict.EVIDENCE_FOR,
            witnesses={"space": space.label(), "dominant_term_n": n_big,
                       "dominant_term_log2": float(log2_terms[n_big - 1])},
            config=cfg.describe(),
            exact=engine.exact,
        )
    terms = 2.0 ** log2_terms
    seg_early = float(terms[quarter:half].sum())
    seg_late = float(terms[half:].sum())
    partial_total = float(terms.sum())
    if seg_early == 0.0:
        ratio = math.inf if seg_late > 0.0 else 0.0
    else:
        ratio = seg_late / seg_early
    if ratio >= 1.0:
        verdict = Verdict.EVIDENCE_FOR
    elif ratio < 0.5:
        verdict = Verdict.EVIDENCE_AGAINST
    else:
        verdict = Verdict.INCONCLUSIVE
    return Report(
        prop="strong-necessary",
        verdict=verdict,
        witnesses={
            "space": space.label(),
            "partial_sum": partial_total,
            "segment_early": seg_early,
            "segment_late": seg_late,
            "segment_ratio": ratio,
        },
        config=cfg.describe(),
        exact=engine.exact,
    )


@dataclass(frozen=True)
class GrowthProfile:
    """A decay-to-growth tradeoff: eps ranges over (0, a) and f maps small
    eps to large required window products."""

    name: str
    a: float
    table: tuple[tuple[float, float], ...] | None = None

    def f(self, eps: float) -> float:
        if not 0.0 < eps < self.a:
            raise ConfigError(f"eps must lie in (0, {self.a}), got {eps}")
        if self.table is not None:
            xs = [x for x, _ in self.table]
            ys = [y for _, y in self.table]
            return float(np.interp(eps, xs, ys))
        if self.name == "inv-4sqrt":
            return 1.0 / (4.0 * math.sqrt(eps))
        if self.name == "inverse":
            return 1.0 / eps
        raise ConfigError(f"unknown profile {self.name!r}")


def profile_from_name(name: str) -> GrowthProfile:
    if name == "inv-4sqrt":
        return GrowthProfile("inv-4sqrt", 0.25)
    if name == "inverse":
        return GrowthProfile("inverse", 1.0)
    raise ConfigError(f"unknown profile name {name!r}")


def _lattice_candidate(profile: GrowthProfile, eps: float, n_target: int) -> tuple[int, int, int]:
    """Constructive (k, m, n): k with 2**(k-1) <= f(eps) < 2**k and the
    smallest m with 4**m >= n_target; n = 4**m * a_k."""
    f_val = profile.f(eps)
    k = max(1, math.floor(math.log2(f_val)) + 1)
    m = 0
    while 4**m < n_target:
        m += 1
    a = 1
    for _ in range(k - 1):
        a = 4 * a + 1
    return k, m, (4**m) * a


def check_strong_sufficient(
    engine: ProductEngine,
    profile: GrowthProfile,
    eps_list: Sequence[float],
    N_list: Sequence[int],
    cfg: ClassifierConfig,
) -> Report:
    """For each (eps, N), search for n with window(i, n) > f(eps) for i <= N
    and window(i, n) > eps for i <= i_max.

    Lattice values 4**m * a_k are tried first with the constructive (k, m)
    choice; if that candidate misses (non-self-similar sequences), all
    n <= horizon are scanned in order.
    """
    results = []
    fallback_minN: dict[int, np.ndarray] = {}
    fallback_minI: np.ndarray | None = None

    def conditions_hold(n: int, N: int, f_val: float, eps: float) -> tuple[bool, dict]:
        if n + max(N, cfg.i_max) - 1 > engine.horizon:
            return False, {"reason": "window beyond horizon"}
        head, _ = min_product_over_i(engine, n, N)
        if not head.value > f_val:
            return False, {"min_head_log2": head.log2}
        full, _ = min_product_over_i(engine, n, cfg.i_max)
        if not full.value > eps:
            return False, {"min_full_log2": full.log2}
        return True, {"min_head_log2": head.log2, "min_full_log2": full.log2}

    for eps in eps_list:
        f_val = profile.f(eps)
        for N in N_list:
            k, m, n0 = _lattice_candidate(profile, eps, N)
            entry: dict = {"eps": eps, "N": N, "f_eps": f_val, "k": k, "m": m}
            ok, detail = (False, {})
            if n0 + cfg.i_max - 1 <= engine.horizon:
                ok, detail = conditions_hold(n0, N, f_val, eps)
            if ok:
                entry.update({"n": n0, "constructive": True, **detail})
                results.append(entry)
                continue
            # fall back to an in-order scan of every n
            if N not in fallback_minN:
                fallback_minN[N] = min_window_table(engine, cfg.horizon, N)[0]
            if fallback_minI is None:
                fallback_minI = min_window_table(engine, cfg.horizon, cfg.i_max)[0]
            head = fallback_minN[N].astype(np.float64)
            full = fallback_minI.astype(np.float64)
            hits = np.nonzero((2.0**head > f_val) & (2.0**full > eps))[0]
            if hits.size:
                entry.update({"n": int(hits[0]) + 1, "constructive": False})
                results.append(entry)
            else:
                entry.update({"n": None, "constructive": False})
                results.append(entry)
    missing = [e for e in results if e["n"] is None]
    return Report(
        prop="strong-sufficient",
        verdict=Verdict.EVIDENCE_FOR if not missing else Verdict.EVIDENCE_AGAINST,
        witnesses={"profile": profile.name, "pairs": results},
        config=cfg.describe(),
        exact=engine.exact,
    )


# ---------------------------------------------------------------------------
# Exact identity suites
# ---------------------------------------------------------------------------


def _collect(failures: list, axes: dict[str, np.ndarray], bad: np.ndarray, limit: int = 10) -> None:
    idx = np.nonzero(bad)
    for row in zip(*idx):
        if len(failures) >= limit:
            return
        failures.append({name: int(arr[row]) for name, arr in axes.items()})


def verify_diamond_identities(
    engine: ProductEngine,
    i_max: int,
    k_max: int,
    m_max: int,
    *,
    power4_i_max: int | None = None,
    power4_k_max: int | None = None,
    growth_k_max: int | None = None,
    floor_k_max: int = 6,
    floor_i_max: int | None = None,
    inverse_square_n_max: int | None = None,
) -> Report:
    """Exact integer-log2 verification of the diamond family's identities.

    Checked, each over its stated grid:
    * pair inversion      w_{2i-1} * w_{2i} * w_i == 1
    * double window       window(i,k)**-1 == window(2i-1,2k) == window(2i,2k)
    * quad window         window(i,k) == window(4i-a,4k) for a in {0,1,2,3}
    * power4 window       window(j, 4**m k) == window(i,k) for j in the
                          4**m-dilated index range of i
    * lattice growth      window(1, a_k) == 2**k
    * lattice floor       min_{i<=floor_i_max} window(i, a_k) >= 4**-k
                          (minimum value and smallest argmin are recorded)
    * inverse square      window(n+1, n) == window(1, n)**-2
    """
    if not engine.exact:
        raise ConfigError("identity suite requires a dyadic-exact engine")
    P = engine.prefix
    H = engine.horizon
    witnesses: dict = {}

    def win_vec(i_arr: np.ndarray, n) -> np.ndarray:
        return P[i_arr + n - 1] - P[i_arr - 1]

    # pair inversion, i <= i_max (weights up to 2*i_max)
    _require_scan(engine, 2 * i_max)
    i = np.arange(1, i_max + 1)
    residual = (P[2 * i] - P[2 * i - 2]) + (P[i] - P[i - 1])
    fails: list = []
    _collect(fails, {"i": i}, residual != 0)
    witnesses["pair_inversion"] = {"checked": i_max, "failures": fails}

    # double and quad window identities on the (i, k) grid
    _require_scan(engine, 4 * (i_max + k_max))
    ii = np.arange(1, i_max + 1)[:, None]
    kk = np.arange(1, k_max + 1)[None, :]
    base = win_vec(ii, kk)
    grid = {"i": np.broadcast_to(ii, base.shape), "k": np.broadcast_to(kk, base.shape)}
    fails = []
    for start in (2 * ii - 1, 2 * ii):
        _collect(fails, grid, win_vec(start, 2 * kk) != -base)
    witnesses["double_window"] = {"checked": 2 * i_max * k_max, "failures": fails}

    fails = []
    for offset in (3, 2, 1, 0):
        _collect(fails, grid, win_vec(4 * ii - offset, 4 * kk) != base)
    witnesses["quad_window"] = {"checked": 4 * i_max * k_max, "failures": fails}

    # power4 dilation on its own (smaller) grid
    p_i = power4_i_max or min(i_max, 16)
    p_k = power4_k_max or min(k_max, 16)
    _require_scan(engine, 4**m_max * (p_i + p_k))
    fails = []
    checked = 0
    for m in range(1, m_max + 1):
        scale = 4**m
        j = np.arange(1, scale * p_i + 1)
        small_i = np.arange(1, p_i + 1)
        for k in range(1, p_k + 1):
            expected = np.repeat(win_vec(small_i, k), scale)
            bad = win_vec(j, scale * k) != expected
            checked += j.size
            if bad.any() and len(fails) < 10:
                pos = int(np.nonzero(bad)[0][0])
                fails.append({"m": m, "k": k, "j": int(j[pos])})
    witnesses["power4_window"] = {"checked": checked, "failures": fails}

    # lattice growth and floor along a_k
    a_values: list[int] = []
    a = 1
    while a <= H and (growth_k_max is None or len(a_values) < growth_k_max):
        a_values.append(a)
        a = 4 * a + 1
    fails = []
    growth_rows = []
    for pos, a_k in enumerate(a_values, start=1):
        got = int(P[a_k])
        growth_rows.append({"k": pos, "n": a_k, "log2": got})
        if got != pos and len(fails) < 10:
            fails.append({"k": pos, "n": a_k, "log2": got})
    witnesses["lattice_growth"] = {"checked": len(a_values), "failures": fails, "rows": growth_rows}

    f_imax = floor_i_max or min(10_000, H)
    fails = []
    floor_rows = []
    for pos, a_k in enumerate(a_values[:floor_k_max], start=1):
        cap = min(f_imax, H - a_k + 1)
        value, argmin = min_product_over_i(engine, a_k, cap)
        row = {
            "k": pos,
            "n": a_k,
            "min_log2": int(value.log2),
            "argmin_i": argmin,
            "i_max": cap,
            "equality": int(value.log2) == -2 * pos and argmin == a_k + 1,
        }
        floor_rows.append(row)
        if int(value.log2) < -2 * pos and len(fails) < 10:
            fails.append(row)
    witnesses["lattice_floor"] = {"checked": len(floor_rows), "failures": fails, "rows": floor_rows}

    n_max = inverse_square_n_max or min(4096, H // 2)
    n = np.arange(1, n_max + 1)
    residual = (P[2 * n] - P[n]) + 2 * P[n]
    fails = []
    _collect(fails, {"n": n}, residual != 0)
    witnesses["inverse_square"] = {"checked": int(n_max), "failures": fails}

    any_fail = any(witnesses[key]["failures"] for key in witnesses)
    return Report(
        prop="diamond-identities",
        verdict=Verdict.EVIDENCE_AGAINST if any_fail else Verdict.EVIDENCE_FOR,
        witnesses=witnesses,
        config={
            "i_max": i_max,
            "k_max": k_max,
            "m_max": m_max,
            "power4_i_max": p_i,
            "power4_k_max": p_k,
            "floor_k_max": floor_k_max,
            "floor_i_max": f_imax,
            "inverse_square_n_max": int(n_max),
            "horizon": H,
        },
        exact=True,
    )


def verify_block_facts(engine: ProductEngine, k_max: int, i_max: int) -> Report:
    """Exact checks of the block family's checkpoint facts.

    * window(1, s_{2k+1}) == 2**(k+1) for k <= k_max;
    * min over i <= i_max and k <= k_max of window(i, s_{2k+1}) >= 1/2,
      recording whether 1/2 is attained;
    * at least k_max indices n within the scanned range have
      window(1, n) == 1 exactly.
    """
    if not engine.exact:
        raise ConfigError("identity suite requires a dyadic-exact engine")
    nk = block_nk_sequence(k_max)
    _require_scan(engine, nk.values[-1] + i_max - 1)
    P = engine.prefix

    fails = []
    checkpoint_rows = []
    for pos, n in enumerate(nk.values, start=1):
        got = int(P[n])
        checkpoint_rows.append({"k": pos, "n": n, "log2": got})
        if got != pos + 1 and len(fails) < 10:
            fails.append({"k": pos, "n": n, "log2": got})
    checkpoints = {"checked": k_max, "failures": fails, "rows": checkpoint_rows}

    global_min = None
    global_arg = (0, 0)
    for n in nk.values:
        value, argmin = min_product_over_i(engine, n, i_max)
        if global_min is None or int(value.log2) < global_min:
            global_min = int(value.log2)
            global_arg = (argmin, n)
    floor = {
        "min_log2": global_min,
        "argmin": {"i": global_arg[0], "n": global_arg[1]},
        "holds": global_min >= -1,
        "half_attained": global_min == -1,
        "failures": [] if global_min >= -1 else [{"i": global_arg[0], "n": global_arg[1], "log2": global_min}],
    }

    unity_ns = np.nonzero(P[1 : nk.values[-1] + 1] == 0)[0] + 1
    unity = {
        "count": int(unity_ns.size),
        "required": k_max,
        "ns": [int(v) for v in unity_ns[:32]],
        "failures": [] if unity_ns.size >= k_max else [{"count": int(unity_ns.size)}],
    }

    any_fail = bool(checkpoints["failures"] or floor["failures"] or unity["failures"])
    return Report(
        prop="block-facts",
        verdict=Verdict.EVIDENCE_AGAINST if any_fail else Verdict.EVIDENCE_FOR,
        witnesses={"checkpoints": checkpoints, "window_floor": floor, "unity_returns": unity},
        config={"k_max": k_max, "i_max": i_max, "horizon": engine.horizon},
        exact=True,
    )


def verify_lemma_comparability(
    engine: ProductEngine, samples: Iterable[tuple[int, int, int]]
) -> Report:
    """Window products at different starts are comparable up to (mu/delta)**(j-i).

    mu and delta are the largest and smallest weight over the horizon; for
    every sampled (i, j, n) with i < j both directions are checked:
    window(j, n) <= (mu/delta)**(j-i) * window(i, n) and vice versa.
    """
    min_w, max_w = engine.weight_log2_bounds()
    spread = max_w - min_w
    # The bound is attained with equality for constant weights, so the float
    # path needs slack against prefix rounding.
    slack = 0 if engine.exact else 1e-9
    failures = []
    checked = 0
    for i, j, n in samples:
        if not i < j:
            raise ValueError(f"samples need i < j, got ({i}, {j})")
        wi = engine.log2_window(i, n)
        wj = engine.log2_window(j, n)
        bound = (j - i) * spread + slack
        if wj > bound + wi or wi > bound + wj:
            if len(failures) < 10:
                failures.append({"i": i, "j": j, "n": n, "log2_i": wi, "log2_j": wj})
        checked += 1
    return Report(
        prop="window-comparability",
        verdict=Verdict.EVIDENCE_FOR if not failures else Verdict.EVIDENCE_AGAINST,
        witnesses={
            "checked": checked,
            "failures": failures,
            "min_weight_log2": min_w,
            "max_weight_log2": max_w,
        },
        config={"horizon": engine.horizon},
        exact=engine.exact,
    )
