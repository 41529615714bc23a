import pytest
from hypothesis import given, settings, strategies as st

import parityfix as pf
from parityfix import Player

from conftest import seeded_game


class Recorder(pf.SolverHooks):
    """Independently mirrors Z and F from events and checks the freeze rules.

    The mirror never reads solver state: every assertion is reconstructed
    from the event stream alone.
    """

    def __init__(self, sorted_game: pf.ParityGame):
        self.game = sorted_game
        self.z = [0] * sorted_game.n
        self.f: list[int | None] = [None] * sorted_game.n
        self.level_size: dict[int, int] = {}
        for p in sorted_game.priority:
            self.level_size[p] = self.level_size.get(p, 0) + 1
        self.epoch_additions: dict[int, int] = {}
        self.trace: list[tuple] = []
        self.violations: list[tuple] = []

    def on_pass(self, p):
        self.trace.append(("pass", p))
        for v, fv in enumerate(self.f):
            if fv is not None and fv < p:
                self.violations.append(("freeze-below-cursor", v, fv, p))

    def on_evaluate(self, v, p):
        if self.f[v] is not None:
            self.violations.append(("evaluated-frozen", v, p))
        if self.z[v]:
            self.violations.append(("evaluated-flagged", v, p))
        if self.game.priority[v] != p:
            self.violations.append(("evaluated-off-level", v, p))

    def on_add(self, v, p):
        self.trace.append(("add", v, p))
        if self.z[v]:
            self.violations.append(("re-add-without-reset", v, p))
        self.z[v] = 1
        count = self.epoch_additions.get(p, 0) + 1
        self.epoch_additions[p] = count
        if count > self.level_size.get(p, 0):
            self.violations.append(("epoch-additions-exceed-level", p, count))

    def on_freeze(self, v, p, winner_bit):
        self.trace.append(("freeze", v, p))
        if self.f[v] is not None:
            self.violations.append(("double-freeze", v, p))
        if not p > self.game.priority[v]:
            self.violations.append(("freeze-level-not-above-priority", v, p))
        mirror_winner = (self.game.priority[v] & 1) ^ self.z[v]
        if mirror_winner != 1 - (p & 1) or winner_bit != 1 - (p & 1):
            self.violations.append(("freeze-winner-mismatch", v, p))
        self.f[v] = p

    def on_thaw(self, v, p):
        self.trace.append(("thaw", v, p))
        if self.f[v] != p:
            self.violations.append(("thaw-mismatch", v, p))
        self.f[v] = None

    def on_reset(self, v, p):
        self.trace.append(("reset", v, p))
        if self.f[v] is not None:
            self.violations.append(("reset-frozen", v, p))
        self.z[v] = 0
        self.epoch_additions[self.game.priority[v]] = 0


class TestWinnerOf:
    def test_even_priority_unflagged(self, g1):
        assert pf.winner_of(1, frozenset(), g1) is Player.EVEN

    def test_odd_priority_flagged_goes_even(self):
        game = pf.ParityGame([5], [0], [[0]])
        assert pf.winner_of(0, {0}, game) is Player.EVEN

    def test_even_priority_flagged_goes_odd(self, g1):
        assert pf.winner_of(1, {1}, g1) is Player.ODD


class TestOnestep:
    def test_g1_v0_picks_v1(self, g1):
        assert pf.onestep(0, frozenset(), g1) == (Player.EVEN, 1)

    def test_opponent_wins_no_strategy(self):
        # Odd-owned vertex whose only successor has an even priority
        game = pf.ParityGame([1, 0], [1, 0], [[1], [1]])
        assert pf.onestep(0, frozenset(), game) == (Player.EVEN, None)

    def test_all_successors_hostile(self):
        # Even-owned vertex, both successors currently Odd-winning
        game = pf.ParityGame([0, 1, 3], [0, 1, 0], [[1, 2], [1], [2]])
        assert pf.onestep(0, frozenset(), game) == (Player.ODD, None)


class TestSolveBasic:
    def test_g1_regions_and_distractions(self, g1):
        out = pf.solve_detailed(g1, pf.SolverOptions(mode="basic"))
        assert out.solution.winner == (Player.EVEN, Player.EVEN)
        assert out.solution.strategy == (None, None)
        assert out.distractions == {0}

    def test_g2_all_even(self, g2):
        sol = pf.solve_basic(g2)
        assert set(sol.winner) == {Player.EVEN}

    def test_empty_game(self):
        sol = pf.solve_basic(pf.ParityGame([], [], []))
        assert sol.winner == () and sol.strategy == ()


class TestSolveFreezing:
    def test_g1_strategy(self, g1):
        sol = pf.solve(g1)
        assert sol.winner == (Player.EVEN, Player.EVEN)
        assert sol.strategy == (1, 0)

    def test_g2_forced_choices(self, g2):
        sol = pf.solve(g2)
        assert set(sol.winner) == {Player.EVEN}
        strat = {g2.original_id[v]: g2.original_id[s] for v, s in enumerate(sol.strategy) if s is not None}
        assert strat[3] == 16
        assert strat[2] == 1
        assert strat[4] == 17
        assert pf.verify(g2, sol).ok

    def test_lost_single_vertex_has_no_strategy(self):
        game = pf.ParityGame([1], [0], [[0]])
        sol = pf.solve(game)
        assert sol.winner == (Player.ODD,)
        assert sol.strategy == (None,)

    def test_options_validation(self):
        with pytest.raises(ValueError):
            pf.SolverOptions(workers=0)
        with pytest.raises(ValueError):
            pf.SolverOptions(pass_semantics="in_place", workers=2)
        with pytest.raises(ValueError):
            pf.SolverOptions(mode="basic", pass_semantics="in_place")
        with pytest.raises(ValueError):
            pf.solve(pf.ParityGame([0], [0], [[0]]), engine="nope")
        with pytest.raises(ValueError):
            pf.solve(pf.ParityGame([0], [0], [[0]]), hooks=pf.SolverHooks(), engine="vector")

    def test_timeout(self):
        game = seeded_game(99, max_n=40)
        with pytest.raises(pf.SolveTimeoutError):
            pf.solve(game, pf.SolverOptions(timeout_s=0.0))


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9))
def test_region_agreement_across_modes(seed):
    game = seeded_game(seed)
    basic = pf.solve_basic(game)
    snap = pf.solve(game)
    inplace = pf.solve(game, pf.SolverOptions(pass_semantics="in_place"))
    assert basic.winner == snap.winner == inplace.winner
    assert pf.verify(game, snap).ok
    assert pf.verify(game, inplace).ok


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_engines_and_workers_bit_identical(seed):
    game = seeded_game(seed, max_n=60)
    scalar = pf.solve(game, engine="scalar")
    vector = pf.solve(game, engine="vector")
    vector_w4 = pf.solve(game, pf.SolverOptions(workers=4), engine="vector")
    assert scalar == vector == vector_w4
    sb = pf.solve_basic(game, engine="scalar")
    vb = pf.solve_basic(game, engine="vector")
    assert sb == vb


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_freeze_discipline_and_epoch_monotonicity(seed):
    game = seeded_game(seed)
    sorted_game, _ = pf.sort_by_priority(game)
    recorder = Recorder(sorted_game)
    sol = pf.solve(game, hooks=recorder)
    assert recorder.violations == []
    assert pf.verify(game, sol).ok


def test_trace_deterministic_across_runs_and_workers():
    for seed in (3, 17, 2024):
        game = seeded_game(seed)
        sorted_game, _ = pf.sort_by_priority(game)
        traces = []
        for workers in (1, 1, 2, 4):
            rec = Recorder(sorted_game)
            # hooks force the scalar engine; snapshot semantics makes the
            # trace independent of the partition count
            pf.solve(game, pf.SolverOptions(workers=workers), hooks=rec)
            traces.append(rec.trace)
        assert all(t == traces[0] for t in traces)


def test_frozen_strategy_survives_until_thaw():
    # any seed works; the recorder pins str writes to non-frozen evaluations
    class StrWatch(Recorder):
        def __init__(self, sorted_game):
            super().__init__(sorted_game)
            self.frozen_str: dict[int, int | None] = {}

        def on_freeze(self, v, p, winner_bit):
            super().on_freeze(v, p, winner_bit)
            self.frozen_str[v] = None  # sentinel: no writes allowed now

        def on_evaluate(self, v, p):
            super().on_evaluate(v, p)
            if v in self.frozen_str and self.f[v] is not None:
                self.violations.append(("write-while-frozen", v))

    for seed in (5, 55, 555):
        game = seeded_game(seed)
        sorted_game, _ = pf.sort_by_priority(game)
        watch = StrWatch(sorted_game)
        pf.solve(game, hooks=watch)
        assert watch.violations == []


def test_state_bytes_reported(g2):
    # scalar engine: flag byte, freeze byte, 4-byte strategy slot per vertex
    out = pf.solve_detailed(g2)
    assert out.stats.state_bytes == g2.n * 6
    # vector engine: packed flag byte plus 4-byte strategy slot per vertex
    vec = pf.solve_detailed(g2, engine="vector")
    assert vec.stats.state_bytes == g2.n * 5
    basic = pf.solve_detailed(g2, pf.SolverOptions(mode="basic"))
    assert basic.stats.state_bytes == g2.n


def test_counters_populated(g2):
    out = pf.solve_detailed(g2)
    assert out.stats.passes > 0
    assert out.stats.additions > 0
    assert out.stats.wall_time_s >= 0.0
