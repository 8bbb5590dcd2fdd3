"""Randomized coloring drivers.

Stage 1 repeatedly picks a random uncolored edge and tries to color it with a
Vizing chain built from a small random palette; when a chain's path hits the
length cap, the blank edge is shifted to a random point along the path and the
attempt continues with a fresh, disjoint palette.  Edges whose attempts fail
are flagged.  Stage 2 greedy-colors the flagged subgraph with a disjoint block
of colors.  A run fails (and may be restarted) when the flagged subgraph is
too dense for the stage-2 budget.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass

import numpy as np

from .chains import _augment_core, _flip_core, _follow_core, _make_fan_core, _shift_core
from .errors import (
    AlreadyColored,
    ColoringFailed,
    EmptyPool,
    Exhausted,
    ImproperAssignment,
    ImproperAugment,
    ImproperFlip,
    ImproperShift,
    InsufficientColors,
)
from .graph import Graph
from .state import BLANK, FLAGGED, NO_EDGE, ColoringState


def _ceil(value: float) -> int:
    # ceil with a tiny slack so decimal parameters like 0.1 * 400 / 2 do not
    # round 20.000000000000004 up to 21.
    return math.ceil(value - 1e-9)


@dataclass(frozen=True)
class RunConfig:
    """Parameters of a coloring run.

    epsilon is the palette slack: a successful run uses at most
    ceil((1 + epsilon) * max_degree) colors.  The remaining knobs scale the
    derived per-attempt parameters and are exposed for benchmarking sweeps:

    * sample size  kappa  = ceil(kappa_const * ln(max_degree) / epsilon)
    * path cap     ell    = ceil(ell_const * kappa^2)
    * max rounds   rounds = ceil(t_const * ln(max_degree))

    Defaults keep kappa^2 / ell <= 1/2 so repeated shifting dies off
    geometrically.  All three are clamped to usable minimums on tiny graphs.
    """

    epsilon: float
    kappa_const: float = 4.0
    ell_const: float = 2.0
    t_const: float = 100.0
    seed: int = 0
    max_restarts: int = 3
    small_delta_fallback: bool = True

    def check(self) -> None:
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.kappa_const <= 0 or self.ell_const <= 0 or self.t_const <= 0:
            raise ValueError("kappa_const, ell_const and t_const must be positive")
        if self.max_restarts < 0:
            raise ValueError("max_restarts must be non-negative")

    def kappa(self, delta: int) -> int:
        return max(1, _ceil(self.kappa_const * math.log(delta) / self.epsilon))

    def ell(self, delta: int) -> int:
        return max(2, _ceil(self.ell_const * self.kappa(delta) ** 2))

    def rounds(self, delta: int) -> int:
        return max(1, _ceil(self.t_const * math.log(delta)))

    def stage1_colors(self, delta: int) -> int:
        """Stage-1 palette size: ceil((1 + epsilon/2) * delta)."""
        return delta + _ceil(self.epsilon * delta / 2.0)

    def total_colors(self, delta: int) -> int:
        """Overall color budget: ceil((1 + epsilon) * delta)."""
        return delta + _ceil(self.epsilon * delta)

    def palette_floor(self, delta: int) -> float:
        """Minimum pool size below which further sampling is pointless."""
        return (1.0 + self.epsilon / 100.0) * delta


class FlagReason(enum.Enum):
    FAN_FAIL = "fan_fail"
    PIVOT_FAIL = "pivot_fail"
    MAX_ITERATIONS = "max_iterations"


@dataclass(frozen=True, slots=True)
class ColorOneOutcome:
    """Result of one color_one call: the edge was colored, or some edge was flagged."""

    colored: bool
    iterations: int
    flagged_edge: int | None = None
    reason: FlagReason | None = None


class RunStats:
    """Counters and histograms collected during a run.

    Totals are consistent by construction: colored_stage1 + flagged_count
    equals m after stage 1, and every flagged edge is colored in stage 2
    (or the run fails).
    """

    def __init__(self):
        self.n = 0
        self.m = 0
        self.delta = 0
        self.epsilon = 0.0
        self.kappa = 0
        self.ell = 0
        self.rounds = 0
        self.q1 = 0
        self.q_cap = 0
        self.seed = 0
        self.stage1_us = 0
        self.stage2_us = 0
        self.colored_stage1 = 0
        self.flagged_count = 0
        self.flags_fan = 0
        self.flags_pivot = 0
        self.flags_maxiter = 0
        self.palette_floor_hits = 0
        self.iteration_hist: dict[int, int] = {}
        self.path_hist: dict[int, int] = {}
        self.shift_count = 0
        self.delta_gstar = 0
        self.gstar_edges = 0
        self.greedy_colors = 0
        self.greedy_edges = 0
        self.greedy_draws = 0
        self.restarts_used = 0
        self.fallback_used = False
        self.max_color_used = 0

    @classmethod
    def for_run(cls, g: Graph, cfg: RunConfig) -> "RunStats":
        stats = cls()
        stats.n = g.n
        stats.m = len(g.edges)
        stats.delta = g.max_degree
        stats.epsilon = cfg.epsilon
        stats.seed = cfg.seed
        if g.max_degree >= 1:
            stats.kappa = cfg.kappa(g.max_degree)
            stats.ell = cfg.ell(g.max_degree)
            stats.rounds = cfg.rounds(g.max_degree)
            stats.q1 = cfg.stage1_colors(g.max_degree)
            stats.q_cap = cfg.total_colors(g.max_degree)
        return stats

    @property
    def flags_total(self) -> int:
        return self.flags_fan + self.flags_pivot + self.flags_maxiter

    @property
    def total_us(self) -> int:
        return self.stage1_us + self.stage2_us

    def _pairs(self, include_timings: bool):
        def fmt_hist(h: dict[int, int]) -> str:
            return ",".join(f"{k}:{v}" for k, v in sorted(h.items()))

        pairs = [
            ("n", self.n),
            ("m", self.m),
            ("delta", self.delta),
            ("epsilon", self.epsilon),
            ("kappa", self.kappa),
            ("ell", self.ell),
            ("rounds", self.rounds),
            ("q1", self.q1),
            ("q_cap", self.q_cap),
            ("seed", self.seed),
            ("colored_stage1", self.colored_stage1),
            ("flagged_count", self.flagged_count),
            ("flags_fan", self.flags_fan),
            ("flags_pivot", self.flags_pivot),
            ("flags_maxiter", self.flags_maxiter),
            ("palette_floor_hits", self.palette_floor_hits),
            ("shift_count", self.shift_count),
            ("delta_gstar", self.delta_gstar),
            ("gstar_edges", self.gstar_edges),
            ("greedy_colors", self.greedy_colors),
            ("greedy_edges", self.greedy_edges),
            ("greedy_draws", self.greedy_draws),
            ("restarts_used", self.restarts_used),
            ("fallback_used", int(self.fallback_used)),
            ("max_color_used", self.max_color_used),
            ("iteration_hist", fmt_hist(self.iteration_hist)),
            ("path_hist", fmt_hist(self.path_hist)),
        ]
        if include_timings:
            pairs.extend([("stage1_us", self.stage1_us), ("stage2_us", self.stage2_us)])
        return pairs

    def to_text(self, include_timings: bool = True) -> str:
        """Flat key=value block; timings are optional so output can be byte-reproducible."""
        return "\n".join(f"{k}={v}" for k, v in self._pairs(include_timings)) + "\n"

    CSV_FIELDS = (
        "n", "m", "delta", "epsilon", "kappa", "ell", "rounds", "q1", "q_cap", "seed",
        "stage1_us", "stage2_us", "colored_stage1", "flagged_count", "flags_fan",
        "flags_pivot", "flags_maxiter", "palette_floor_hits", "shift_count",
        "delta_gstar", "gstar_edges", "greedy_draws", "restarts_used",
        "fallback_used", "max_color_used", "path_len_max",
    )

    def to_csv_row(self) -> list:
        path_max = max(self.path_hist, default=0)
        return [
            self.n, self.m, self.delta, self.epsilon, self.kappa, self.ell,
            self.rounds, self.q1, self.q_cap, self.seed, self.stage1_us,
            self.stage2_us, self.colored_stage1, self.flagged_count,
            self.flags_fan, self.flags_pivot, self.flags_maxiter,
            self.palette_floor_hits, self.shift_count, self.delta_gstar,
            self.gstar_edges, self.greedy_draws, self.restarts_used,
            int(self.fallback_used), self.max_color_used, path_max,
        ]


# ---------------------------------------------------------------------------
# Palette sampling.
# ---------------------------------------------------------------------------


def sample_palette(pool, kappa: int, rng) -> list[int]:
    """Draw kappa colors from ``pool`` with replacement; return them deduplicated, ascending."""
    if len(pool) == 0:
        raise EmptyPool("cannot sample from an empty color pool")
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    idx = rng.integers(0, len(pool), size=kappa)
    return sorted({pool[i] for i in idx})


class _PaletteSampler:
    """Chunked with-replacement draws for round 1, where the pool is all of [1, q1].

    Pre-generating blocks amortizes the RNG call across many color_one calls
    and the ascending sort happens batchwise in numpy; the stream stays a pure
    function of (seed, call order).  Rows may contain duplicates: every
    consumer takes ascending minima over the sample, for which duplicates are
    harmless, and the rare multi-round bookkeeping deduplicates lazily.
    """

    __slots__ = ("q1", "kappa", "rng", "chunk_rows", "_rows", "_cursor")

    def __init__(self, q1, kappa, rng, chunk_rows=2048):
        self.q1 = q1
        self.kappa = kappa
        self.rng = rng
        self.chunk_rows = chunk_rows
        self._rows = []
        self._cursor = 0

    def first(self) -> list[int]:
        if self._cursor == len(self._rows):
            block = self.rng.integers(
                1, self.q1 + 1, size=(self.chunk_rows, self.kappa), dtype=np.int32
            )
            block.sort(axis=1)
            self._rows = block.tolist()
            self._cursor = 0
        row = self._rows[self._cursor]
        self._cursor += 1
        return row


# ---------------------------------------------------------------------------
# Color One.
# ---------------------------------------------------------------------------

_R_FAN = 0
_R_PIVOT = 1
_R_MAX = 2

_REASONS = {
    _R_FAN: FlagReason.FAN_FAIL,
    _R_PIVOT: FlagReason.PIVOT_FAIL,
    _R_MAX: FlagReason.MAX_ITERATIONS,
}


def _color_one_raw(state, e, x, q1, kappa, ell, rounds, floor_q, first_C, rng, path_counts, stats):
    """Try to color blank edge e, shifting it along capped chains as needed.

    ``first_C`` is the round-1 palette sample (ascending, duplicates allowed);
    later rounds sample their own disjoint palettes.  ``path_counts`` is a
    length histogram indexed by path length.  Returns (colored, iterations,
    flagged_edge, reason_code).  Exactly one of two postconditions holds: e
    joined the colored set and nothing was flagged, or one edge (possibly a
    shifted descendant of e) moved from colored-or-e to flagged and
    everything else is unchanged.
    """
    g = state.graph
    slot = state.slot
    miss = state.missing
    pres = state.present
    eu = g.edge_u
    ev = g.edge_v
    C = first_C
    pool = None
    sampled = None
    for t in range(1, rounds + 1):
        if t > 1:
            if pool is None:
                sampled = set(first_C)
                pool = [c for c in range(1, q1 + 1) if c not in sampled]
            # len(pool) is exactly the number of never-sampled colors left.
            if len(pool) < floor_q:
                # Pool too depleted for the success guarantees; stop early.
                slot[e] = FLAGGED
                state.flagged_count += 1
                stats.palette_floor_hits += 1
                return False, t - 1, e, _R_PIVOT
            C = sample_palette(pool, kappa, rng)
            cset = set(C)
            assert cset.isdisjoint(sampled), "palettes within one call must be disjoint"
            sampled |= cset
            pool = [c for c in pool if c not in cset]

        # Single-leaf fast path: the minimum sampled color missing at the far
        # endpoint is also missing at the pivot, so e can be colored at once.
        # This is exactly the first iteration of the fan builder followed by
        # a length-one (no-op) shift.
        y = eu[e] + ev[e] - x
        prz = pres[y]
        prx = pres[x]
        for c in C:
            if not prz[c]:
                break
        else:
            slot[e] = FLAGGED
            state.flagged_count += 1
            return False, t, e, _R_FAN
        if not prx[c]:
            path_counts[0] += 1
            slot[e] = c
            miss[y][c] = e
            miss[x][c] = e
            prz[c] = 1
            prx[c] = 1
            state.colored_count += 1
            return True, t, -1, -1

        fan = _make_fan_core(miss, pres, eu, ev, e, x, C, first_eta=c)
        if fan is None:
            slot[e] = FLAGGED
            state.flagged_count += 1
            return False, t, e, _R_FAN
        leaves, leaf_eids, alpha, j = fan
        k = len(leaves)

        if j == k:
            # Happy fan: alpha is missing at the pivot, shift and color.
            path_counts[0] += 1
            try:
                _shift_core(state, x, leaves, leaf_eids)
                state.assign(leaf_eids[-1], alpha)
            except (ImproperShift, ImproperAssignment, AlreadyColored) as exc:
                raise ImproperAugment(str(exc)) from exc
            return True, t, -1, -1

        beta = 0
        for c in C:
            if not prx[c]:
                beta = c
                break
        if beta == 0:
            slot[e] = FLAGGED
            state.flagged_count += 1
            return False, t, e, _R_PIVOT

        pv, pe, _trunc = _follow_core(miss, eu, ev, x, alpha, beta, ell)
        s = len(pe)
        path_counts[s] += 1
        assert pv[1] == leaves[j]

        if s < ell:
            _augment_core(state, x, leaves, leaf_eids, alpha, beta, j, pv, pe)
            return True, t, -1, -1

        # Path hit the cap: uncolor a uniformly random path edge, augment the
        # initial segment, and continue from the moved blank edge with the
        # next (disjoint) palette.
        lp = int(rng.integers(1, ell + 1))
        cut = pe[lp - 1]
        cc = slot[cut]
        cu = eu[cut]
        cv = ev[cut]
        slot[cut] = BLANK
        miss[cu][cc] = NO_EDGE
        miss[cv][cc] = NO_EDGE
        pres[cu][cc] = 0
        pres[cv][cc] = 0
        state.colored_count -= 1
        try:
            _flip_core(state, pv[:lp], pe[: lp - 1], alpha, beta)
            _shift_core(state, x, leaves[:j], leaf_eids[:j])
            state.assign(leaf_eids[j - 1], alpha)
        except (ImproperFlip, ImproperShift, ImproperAssignment, AlreadyColored) as exc:
            raise ImproperAugment(str(exc)) from exc
        stats.shift_count += 1
        e = cut
        x = pv[lp - 1]
    slot[e] = FLAGGED
    state.flagged_count += 1
    return False, rounds, e, _R_MAX


def color_one(
    state: ColoringState,
    e: int,
    x: int,
    cfg: RunConfig,
    rng,
    stats: RunStats | None = None,
    q1: int | None = None,
) -> ColorOneOutcome:
    """Color blank edge e or flag one edge, leaving the state proper either way.

    ``q1`` overrides the derived stage-1 palette size (testing hook for
    adversarial palettes).  The flag reason and iteration count in the
    outcome describe the run exactly.
    """
    cfg.check()
    g = state.graph
    if state.slot[e] != BLANK:
        raise AlreadyColored(f"edge {e} is not blank")
    if x not in (g.edge_u[e], g.edge_v[e]):
        raise ValueError(f"vertex {x} is not an endpoint of edge {e}")
    delta = g.max_degree
    if q1 is None:
        q1 = cfg.stage1_colors(delta)
    if not 1 <= q1 <= state.q:
        raise ValueError(f"stage-1 palette size {q1} outside [1, {state.q}]")
    if stats is None:
        stats = RunStats.for_run(g, cfg)
    kappa = cfg.kappa(delta)
    ell = cfg.ell(delta)
    first = rng.integers(1, q1 + 1, size=(1, kappa))
    first.sort(axis=1)
    path_counts = [0] * (ell + 1)
    colored, iters, fedge, reason = _color_one_raw(
        state, e, x, q1, kappa, ell, cfg.rounds(delta),
        cfg.palette_floor(delta), first.tolist()[0], rng, path_counts, stats,
    )
    stats.iteration_hist[iters] = stats.iteration_hist.get(iters, 0) + 1
    for length, count in enumerate(path_counts):
        if count:
            stats.path_hist[length] = stats.path_hist.get(length, 0) + count
    if colored:
        return ColorOneOutcome(True, iters)
    return ColorOneOutcome(False, iters, fedge, _REASONS[reason])


# ---------------------------------------------------------------------------
# Greedy coloring (stage 2 and the small-degree fallback).
# ---------------------------------------------------------------------------


def greedy_color(g: Graph, num_colors: int, rng, stats: RunStats | None = None) -> ColoringState:
    """Color every edge by redrawing uniform colors until one fits.

    Requires num_colors >= 2 * max_degree - 1 so a draw always can succeed;
    each draw then fits with probability at least
    (num_colors - 2*max_degree + 2) / num_colors.
    """
    delta = g.max_degree
    if delta >= 1 and num_colors < 2 * delta - 1:
        raise InsufficientColors(
            f"{num_colors} colors < 2*{delta} - 1 required by the greedy guarantee"
        )
    state = ColoringState(g, max(1, num_colors))
    miss = state.missing
    pres = state.present
    slot = state.slot
    eu = g.edge_u
    ev = g.edge_v
    draws = 0
    buf: list[int] = []
    cursor = 0
    for e in range(len(g.edges)):
        u = eu[e]
        v = ev[e]
        pu = pres[u]
        pv = pres[v]
        while True:
            if cursor == len(buf):
                buf = rng.integers(1, num_colors + 1, size=1024).tolist()
                cursor = 0
            c = buf[cursor]
            cursor += 1
            draws += 1
            if not pu[c] and not pv[c]:
                slot[e] = c
                miss[u][c] = e
                miss[v][c] = e
                pu[c] = 1
                pv[c] = 1
                state.colored_count += 1
                break
    if stats is not None:
        stats.greedy_colors = num_colors
        stats.greedy_edges += len(g.edges)
        stats.greedy_draws += draws
    return state


# ---------------------------------------------------------------------------
# The two-stage driver.
# ---------------------------------------------------------------------------


def edge_color(g: Graph, cfg: RunConfig, rng=None) -> tuple[ColoringState, RunStats]:
    """Produce a proper coloring of g with at most ceil((1+epsilon)*Delta) colors.

    Raises ColoringFailed when the flagged subgraph ends up denser than
    epsilon*Delta/6, in which case the caller may retry with fresh randomness
    (see run_full).  On success the returned state has no blank and no
    flagged edges.
    """
    cfg.check()
    if rng is None:
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    stats = RunStats.for_run(g, cfg)
    m = len(g.edges)
    delta = g.max_degree
    if m == 0:
        return ColoringState(g, 1), stats

    q1 = cfg.stage1_colors(delta)
    q_cap = cfg.total_colors(delta)
    kappa = cfg.kappa(delta)
    ell = cfg.ell(delta)
    rounds = cfg.rounds(delta)
    floor_q = cfg.palette_floor(delta)

    state = ColoringState(g, q_cap)
    eu = g.edge_u
    ev = g.edge_v

    t0 = time.perf_counter_ns()
    sampler = _PaletteSampler(q1, kappa, rng)
    # Pre-drawn uniform picks: position in the shrinking pool U, and a coin
    # for which endpoint becomes the pivot.
    picks = rng.integers(0, np.arange(m, 0, -1)).tolist()
    coins = rng.integers(0, 2, size=m).tolist()
    pool = list(range(m))
    path_counts = [0] * (ell + 1)
    iter_counts = [0] * (rounds + 1)
    raw = _color_one_raw
    sampler_first = sampler.first
    for i in range(m):
        pos = picks[i]
        e = pool[pos]
        last = pool.pop()
        if pos < len(pool):
            pool[pos] = last
        x = eu[e] if coins[i] else ev[e]
        colored, iters, fedge, reason = raw(
            state, e, x, q1, kappa, ell, rounds, floor_q, sampler_first(), rng,
            path_counts, stats,
        )
        iter_counts[iters] += 1
        if not colored:
            if reason == _R_FAN:
                stats.flags_fan += 1
            elif reason == _R_PIVOT:
                stats.flags_pivot += 1
            else:
                stats.flags_maxiter += 1
    assert state.colored_count + state.flagged_count == m
    stats.stage1_us = (time.perf_counter_ns() - t0) // 1000
    stats.colored_stage1 = state.colored_count
    stats.flagged_count = state.flagged_count
    assert stats.flags_total == state.flagged_count
    stats.path_hist = {length: c for length, c in enumerate(path_counts) if c}
    stats.iteration_hist = {t: c for t, c in enumerate(iter_counts) if c}

    t1 = time.perf_counter_ns()
    flagged = state.flagged_edges()
    if flagged:
        from .graph import build_graph

        gstar = build_graph([g.edges[e] for e in flagged], g.n)
        dstar = gstar.max_degree
        stats.delta_gstar = dstar
        stats.gstar_edges = len(flagged)
        if dstar > cfg.epsilon * delta / 6.0:
            stats.stage2_us = (time.perf_counter_ns() - t1) // 1000
            raise ColoringFailed(
                f"flagged subgraph degree {dstar} exceeds "
                f"{cfg.epsilon * delta / 6.0:.3f}",
                stats=stats,
                gstar_degree=dstar,
            )
        q2 = 3 * dstar
        sub = greedy_color(gstar, q2, rng, stats=stats)
        assert q1 + q2 <= q_cap
        for i, e in enumerate(flagged):
            state._unflag(e)
            state.assign(e, q1 + sub.slot[i])
    stats.stage2_us = (time.perf_counter_ns() - t1) // 1000
    stats.max_color_used = state.max_color_used()
    assert stats.max_color_used <= q_cap
    return state, stats


def run_full(g: Graph, cfg: RunConfig) -> tuple[ColoringState, RunStats]:
    """edge_color with restarts on failure and an optional greedy fallback.

    Attempt i runs with randomness derived from (cfg.seed, i); up to
    1 + max_restarts attempts are made.  If all fail and
    small_delta_fallback is set, the whole graph is greedy-colored with
    2*Delta - 1 colors, so a proper coloring is always returned.
    """
    cfg.check()
    for attempt in range(cfg.max_restarts + 1):
        rng = np.random.default_rng(np.random.SeedSequence((cfg.seed, attempt)))
        try:
            state, stats = edge_color(g, cfg, rng)
        except ColoringFailed:
            continue
        stats.restarts_used = attempt
        return state, stats
    if cfg.small_delta_fallback:
        delta = g.max_degree
        rng = np.random.default_rng(np.random.SeedSequence((cfg.seed, cfg.max_restarts + 1)))
        stats = RunStats.for_run(g, cfg)
        stats.restarts_used = cfg.max_restarts
        stats.fallback_used = True
        t0 = time.perf_counter_ns()
        state = greedy_color(g, max(1, 2 * delta - 1), rng, stats=stats)
        stats.stage2_us = (time.perf_counter_ns() - t0) // 1000
        stats.max_color_used = state.max_color_used()
        return state, stats
    raise Exhausted(f"all {cfg.max_restarts + 1} attempts failed and fallback is disabled")
