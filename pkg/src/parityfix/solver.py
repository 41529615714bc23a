"""Distraction-driven fixpoint solver for parity games.

Every vertex starts out estimated as won by the player of its own priority
parity.  A per-vertex flag set Z collects the vertices where that estimate
fails (the distractions): a vertex joins Z when its owner cannot reach an
estimated-winning successor in one step.  Levels are processed from the
lowest priority upward, and whenever a level gains distractions all lower
levels are recomputed.  The final winners are read off the flags.

The freezing mode additionally keeps, while a level's fixpoint is in
progress, all lower vertices currently won by the opposite parity out of
the recomputation.  Those frozen vertices keep the last successor choice
recorded for them, which is exactly what makes the recorded one-step
choices a correct winning strategy by the end of the run.

Two pass semantics exist.  ``snapshot`` evaluates a whole level against
the flag state from the start of the pass; it is the canonical mode and is
bit-deterministic for any worker count, since evaluations are independent.
``in_place`` publishes flag updates mid-pass and is single threaded.  Both
converge to the same regions.

Engines: a scalar engine (plain Python, used for small games and whenever
instrumentation hooks are attached) and a vectorized engine (numpy over a
CSR edge layout, used for large games).  Both implement identical
semantics, including strategy tie-breaking on the first winning successor
in stored order, and produce identical results.
"""

from __future__ import annotations

import time
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np

from .game import ParityGame, Player, Solution, SortPermutation, sort_by_priority

_SCALAR_LIMIT = 1024
_POOL_MIN_WORK = 4096  # below this many eligible vertices, thread dispatch costs more than it saves


class SolveTimeoutError(Exception):
    """Cooperative deadline hit between solver passes."""


@dataclass(frozen=True)
class SolverOptions:
    mode: Literal["basic", "freezing"] = "freezing"
    pass_semantics: Literal["snapshot", "in_place"] = "snapshot"
    workers: int = 1
    collect_counters: bool = True
    timeout_s: float | None = None

    def __post_init__(self):
        if self.mode not in ("basic", "freezing"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.pass_semantics not in ("snapshot", "in_place"):
            raise ValueError(f"unknown pass semantics {self.pass_semantics!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.pass_semantics == "in_place" and self.workers > 1:
            raise ValueError("in_place passes are single threaded")
        if self.mode == "basic" and self.pass_semantics == "in_place":
            raise ValueError("basic mode always evaluates against a pass snapshot")


@dataclass
class SolverStats:
    """Counters over one solve run; always maintained, cheap to keep."""

    passes: int = 0
    additions: int = 0
    resets: int = 0
    freezes: int = 0
    wall_time_s: float = 0.0
    state_bytes: int = 0


class SolverHooks:
    """Instrumentation callbacks.

    Attaching hooks forces the scalar engine.  All vertex indices passed to
    callbacks refer to the priority-sorted order (see DfiOutcome.sorted_game).
    """

    def on_pass(self, priority: int) -> None:
        pass

    def on_evaluate(self, v: int, priority: int) -> None:
        pass

    def on_add(self, v: int, priority: int) -> None:
        pass

    def on_freeze(self, v: int, priority: int, winner_bit: int) -> None:
        pass

    def on_thaw(self, v: int, priority: int) -> None:
        pass

    def on_reset(self, v: int, priority: int) -> None:
        pass


@dataclass(frozen=True)
class DfiOutcome:
    """Solution plus run metadata, all in the caller's vertex order except
    sorted_game/permutation which expose the internal order for inspection."""

    solution: Solution
    stats: SolverStats
    distractions: frozenset[int]
    sorted_game: ParityGame
    permutation: SortPermutation


def winner_of(v: int, z, game: ParityGame) -> Player:
    """Estimated winner of ``v`` under flag set ``z`` (any membership container)."""
    par = game.priority[v] & 1
    return Player(1 - par) if v in z else Player(par)


def onestep(v: int, z, game: ParityGame) -> tuple[Player, int | None]:
    """One-step evaluation of ``v``: can its owner move to an estimated win?

    Returns the one-step winner and, when that is the owner, the first
    winning successor in stored order; otherwise no successor.
    """
    ow = game.owner[v]
    for u in game.successors[v]:
        if winner_of(u, z, game) is ow:
            return ow, u
    return ow.opponent, None


def _check_deadline(deadline: float | None) -> None:
    if deadline is not None and time.perf_counter() > deadline:
        raise SolveTimeoutError("solver deadline exceeded")


# ---------------------------------------------------------------- scalar


def _basic_scalar(game, hooks, deadline, stats) -> bytearray:
    n = game.n
    succ = game.successors
    par = game._parity_ints
    own = game._owner_ints
    z = bytearray(n)
    stats.state_bytes = n
    levels = game.levels
    li = 0
    while li < len(levels):
        _check_deadline(deadline)
        stats.passes += 1
        p, lo, hi = levels[li]
        alpha = p & 1
        if hooks:
            hooks.on_pass(p)
        zs = z[lo:hi]  # pass-start snapshot of the only flags that can move
        changed = False
        for v in range(lo, hi):
            if z[v]:
                continue
            if hooks:
                hooks.on_evaluate(v, p)
            ow = own[v]
            res = 1 - ow
            for u in succ[v]:
                zu = zs[u - lo] if lo <= u < hi else z[u]
                if (par[u] ^ zu) == ow:
                    res = ow
                    break
            if res != alpha:
                z[v] = 1
                changed = True
                stats.additions += 1
                if hooks:
                    hooks.on_add(v, p)
        if changed:
            stats.resets += 1
            for w in range(lo):
                if z[w]:
                    z[w] = 0
                    if hooks:
                        hooks.on_reset(w, p)
            li = 0
        else:
            li += 1
    return z


def _freezing_scalar(game, opts, hooks, deadline, stats):
    n = game.n
    succ = game.successors
    par = game._parity_ints
    own = game._owner_ints
    d = game.max_priority
    z = bytearray(n)
    # freeze level + 1 per vertex, 0 meaning not frozen
    f = bytearray(n) if d <= 254 else [0] * n
    st = array("i", [-1]) * n
    stats.state_bytes = n + n + st.itemsize * n
    snapshot = opts.pass_semantics == "snapshot"
    levels = game.levels
    li = 0
    while li < len(levels):
        _check_deadline(deadline)
        stats.passes += 1
        p, lo, hi = levels[li]
        alpha = p & 1
        if hooks:
            hooks.on_pass(p)
        zs = z[lo:hi] if snapshot else None
        changed = False
        for v in range(lo, hi):
            if f[v] or z[v]:
                continue
            if hooks:
                hooks.on_evaluate(v, p)
            ow = own[v]
            res = 1 - ow
            choice = -1
            for u in succ[v]:
                if zs is not None and lo <= u < hi:
                    zu = zs[u - lo]
                else:
                    zu = z[u]
                if (par[u] ^ zu) == ow:
                    res = ow
                    choice = u
                    break
            st[v] = choice
            if res != alpha:
                z[v] = 1
                changed = True
                stats.additions += 1
                if hooks:
                    hooks.on_add(v, p)
        if changed:
            stats.resets += 1
            fp = p + 1
            opp = 1 - alpha
            for w in range(lo):
                if f[w]:
                    continue
                if (par[w] ^ z[w]) == opp:
                    f[w] = fp
                    stats.freezes += 1
                    if hooks:
                        hooks.on_freeze(w, p, opp)
                elif z[w]:
                    z[w] = 0
                    if hooks:
                        hooks.on_reset(w, p)
            li = 0
        else:
            fp = p + 1
            for w in range(lo):
                if f[w] == fp:
                    f[w] = 0
                    if hooks:
                        hooks.on_thaw(w, p)
            li += 1
    return z, st


# ---------------------------------------------------------------- vector


def _flag_layout(d: int) -> tuple[type, int]:
    if d <= 126:
        return np.uint8, 7
    if d <= 32766:
        return np.uint16, 15
    return np.uint32, 31


def _eval_indices(indptr, targets, edge_owner, owner_bits, win, gidx):
    """One-step evaluation of the vertices listed in ``gidx`` against the
    snapshot winner bits ``win``.

    Returns (first winning successor or -1, one-step winner bit), aligned
    with ``gidx``.
    """
    starts = indptr[gidx]
    counts = indptr[gidx + 1] - starts
    total = int(counts.sum())
    bounds = np.zeros(len(gidx) + 1, dtype=np.int64)
    np.cumsum(counts, out=bounds[1:])
    pos = np.arange(total, dtype=np.int64)
    pos += np.repeat(starts - bounds[:-1], counts)
    tg = targets[pos]
    good = win[tg] == edge_owner[pos]
    hits = np.flatnonzero(good)
    fh = np.searchsorted(hits, bounds[:-1], side="left")
    eh = np.empty_like(fh)
    if len(eh):
        eh[:-1] = fh[1:]
        eh[-1] = len(hits)
    has = fh < eh
    if len(hits):
        first = tg[hits[np.minimum(fh, len(hits) - 1)]]
        stratvals = np.where(has, first, np.int32(-1))
    else:
        stratvals = np.full(len(gidx), -1, dtype=np.int32)
    ob = owner_bits[gidx]
    osbit = np.where(has, ob, 1 - ob).astype(np.uint8)
    return stratvals, osbit


def _eval_range(indptr, targets, edge_owner, owner_bits, win, rlo, rhi):
    """Contiguous-range variant of _eval_indices (cheaper edge gather)."""
    e0 = int(indptr[rlo])
    e1 = int(indptr[rhi])
    tg = targets[e0:e1]
    good = win[tg] == edge_owner[e0:e1]
    hits = np.flatnonzero(good)
    starts = indptr[rlo:rhi] - e0
    fh = np.searchsorted(hits, starts, side="left")
    eh = np.empty_like(fh)
    if len(eh):
        eh[:-1] = fh[1:]
        eh[-1] = len(hits)
    has = fh < eh
    if len(hits):
        first = tg[hits[np.minimum(fh, len(hits) - 1)]]
        stratvals = np.where(has, first, np.int32(-1))
    else:
        stratvals = np.full(rhi - rlo, -1, dtype=np.int32)
    ob = owner_bits[rlo:rhi]
    osbit = np.where(has, ob, 1 - ob).astype(np.uint8)
    return stratvals, osbit


def _split_indices(gidx, k):
    if k <= 1 or len(gidx) < 2 * k:
        return [gidx]
    return np.array_split(gidx, k)


def _basic_vector(game, opts, deadline, stats) -> np.ndarray:
    n = game.n
    indptr, targets, edge_owner = game._csr
    par = game._parity_bits
    owner_bits = np.fromiter(game._owner_ints, dtype=np.uint8, count=n)
    z = np.zeros(n, dtype=np.uint8)
    stats.state_bytes = z.nbytes
    win = par.copy()  # kept equal to par ^ z at every pass boundary
    levels = game.levels
    li = 0
    while li < len(levels):
        _check_deadline(deadline)
        stats.passes += 1
        p, lo, hi = levels[li]
        alpha = p & 1
        gidx = lo + np.flatnonzero(z[lo:hi] == 0)
        if len(gidx) == 0:
            li += 1
            continue
        _, osbit = _eval_indices(indptr, targets, edge_owner, owner_bits, win, gidx)
        add = gidx[osbit != alpha]
        if len(add):
            z[add] = 1
            win[add] = 1 - alpha
            stats.additions += len(add)
            stats.resets += 1
            z[:lo] = 0
            win[:lo] = par[:lo]
            li = 0
        else:
            li += 1
    return z


def _freezing_vector(game, opts, deadline, stats, pool):
    n = game.n
    indptr, targets, edge_owner = game._csr
    par = game._parity_bits
    owner_bits = np.fromiter(game._owner_ints, dtype=np.uint8, count=n)
    dtype, zshift = _flag_layout(game.max_priority)
    zmask = 1 << zshift
    fmask = zmask - 1
    flags = np.zeros(n, dtype=dtype)
    strat = np.full(n, -1, dtype=np.int32)
    stats.state_bytes = flags.nbytes + strat.nbytes
    win = par.copy()  # kept equal to par ^ zbit at every pass boundary
    levels = game.levels
    workers = opts.workers
    frozen_at: dict[int, int] = {}  # freeze level -> live count, to skip no-op thaws
    li = 0
    while li < len(levels):
        _check_deadline(deadline)
        stats.passes += 1
        p, lo, hi = levels[li]
        alpha = p & 1
        lvl = flags[lo:hi]
        span = hi - lo
        full = int(np.count_nonzero(lvl)) == 0
        if full:
            gidx = np.arange(lo, hi, dtype=np.int64)
        else:
            gidx = lo + np.flatnonzero(lvl == 0)
        added = 0
        if len(gidx):
            chunks = _split_indices(gidx, workers)
            if pool is not None and len(chunks) > 1 and len(gidx) >= _POOL_MIN_WORK:
                # same chunk boundaries as the sequential branch; every chunk
                # reads the one pass-start snapshot, so scheduling is moot
                results = list(
                    pool.map(
                        lambda c: _eval_indices(indptr, targets, edge_owner, owner_bits, win, c),
                        chunks,
                    )
                )
            elif full and len(chunks) == 1:
                results = [_eval_range(indptr, targets, edge_owner, owner_bits, win, lo, hi)]
            else:
                results = [
                    _eval_indices(indptr, targets, edge_owner, owner_bits, win, c)
                    for c in chunks
                ]
            for chunk, (stratvals, osbit) in zip(chunks, results):
                strat[chunk] = stratvals
                add = chunk[osbit != alpha]
                if len(add):
                    flags[add] |= zmask
                    win[add] = 1 - alpha
                    added += len(add)
        if added:
            stats.additions += added
            stats.resets += 1
            low = flags[:lo]
            unfrozen = (low & fmask) == 0
            opp_now = win[:lo] == (1 - alpha)
            fr = unfrozen & opp_now
            nfr = int(np.count_nonzero(fr))
            if nfr:
                low[fr] = (low[fr] & zmask) | (p + 1)
                stats.freezes += nfr
                frozen_at[p] = frozen_at.get(p, 0) + nfr
            rs = unfrozen & ~opp_now
            low[rs] = 0
            win[:lo][rs] = par[:lo][rs]
            li = 0
        else:
            if frozen_at.get(p):
                low = flags[:lo]
                thaw = (low & fmask) == (p + 1)
                low[thaw] &= zmask
                frozen_at[p] = 0
            li += 1
    z = ((flags >> zshift) & 1).astype(np.uint8)
    return z, strat


# ---------------------------------------------------------------- driver


def _pick_engine(engine: str, game: ParityGame, options: SolverOptions, hooks) -> str:
    if engine not in ("auto", "scalar", "vector"):
        raise ValueError(f"unknown engine {engine!r}")
    if hooks is not None:
        if engine == "vector":
            raise ValueError("instrumentation hooks require the scalar engine")
        return "scalar"
    if options.pass_semantics == "in_place":
        if engine == "vector":
            raise ValueError("in_place passes require the scalar engine")
        return "scalar"
    if engine == "auto":
        return "scalar" if game.n <= _SCALAR_LIMIT else "vector"
    return engine


def solve_detailed(
    game: ParityGame,
    options: SolverOptions | None = None,
    hooks: SolverHooks | None = None,
    *,
    engine: str = "auto",
) -> DfiOutcome:
    """Full solve with stats and the final distraction set.

    The input is sorted by priority internally when needed; all results are
    reported in the input's vertex order.
    """
    opts = options or SolverOptions()
    sorted_game, perm = sort_by_priority(game)
    eng = _pick_engine(engine, sorted_game, opts, hooks)
    stats = SolverStats()
    t0 = time.perf_counter()
    deadline = t0 + opts.timeout_s if opts.timeout_s is not None else None

    st = None
    if opts.mode == "basic":
        if eng == "scalar":
            z = _basic_scalar(sorted_game, hooks, deadline, stats)
        else:
            z = _basic_vector(sorted_game, opts, deadline, stats)
    else:
        if eng == "scalar":
            z, st = _freezing_scalar(sorted_game, opts, hooks, deadline, stats)
        else:
            pool = ThreadPoolExecutor(max_workers=opts.workers) if opts.workers > 1 else None
            try:
                z, st = _freezing_vector(sorted_game, opts, deadline, stats, pool)
            finally:
                if pool is not None:
                    pool.shutdown(wait=True)
    stats.wall_time_s = time.perf_counter() - t0

    par = sorted_game._parity_ints
    own = sorted_game._owner_ints
    n = sorted_game.n
    winner_int = [par[v] ^ (1 if z[v] else 0) for v in range(n)]
    if st is not None:
        strategy_int: list[int | None] = [
            (int(st[v]) if (own[v] == winner_int[v] and st[v] >= 0) else None) for v in range(n)
        ]
    else:
        strategy_int = [None] * n

    if perm.is_identity:
        winner = tuple(Player(w) for w in winner_int)
        strategy = tuple(strategy_int)
        distractions = frozenset(v for v in range(n) if z[v])
    else:
        fwd = perm.forward
        bwd = perm.backward
        winner = tuple(Player(winner_int[fwd[v]]) for v in range(n))
        strategy = tuple(
            (bwd[strategy_int[fwd[v]]] if strategy_int[fwd[v]] is not None else None)
            for v in range(n)
        )
        distractions = frozenset(bwd[v] for v in range(n) if z[v])
    return DfiOutcome(Solution(winner, strategy), stats, distractions, sorted_game, perm)


def solve(
    game: ParityGame,
    options: SolverOptions | None = None,
    hooks: SolverHooks | None = None,
    *,
    engine: str = "auto",
) -> Solution:
    """Solve with strategies (default) or regions only (mode=basic)."""
    return solve_detailed(game, options, hooks, engine=engine).solution


def solve_basic(
    game: ParityGame,
    hooks: SolverHooks | None = None,
    *,
    engine: str = "auto",
    timeout_s: float | None = None,
) -> Solution:
    """Region-only solve; strategies are all ``None``."""
    opts = SolverOptions(mode="basic", timeout_s=timeout_s)
    return solve_detailed(game, opts, hooks, engine=engine).solution
