import pytest
from hypothesis import given, settings, strategies as st

import parityfix as pf

from conftest import seeded_game


class TestPlayer:
    def test_integer_encoding(self):
        assert int(pf.Player.EVEN) == 0
        assert int(pf.Player.ODD) == 1

    def test_opponent_involution(self):
        for p in pf.Player:
            assert p.opponent.opponent is p

    def test_of_parity_matches_arithmetic(self):
        assert pf.Player.of_parity(4) is pf.Player.EVEN
        assert pf.Player.of_parity(17) is pf.Player.ODD


class TestValidate:
    def test_empty_game_is_legal(self):
        pf.validate(pf.ParityGame([], [], []))

    def test_g1_validates(self, g1):
        pf.validate(g1)

    def test_sink_vertex(self):
        game = pf.ParityGame([0], [0], [[]])
        with pytest.raises(pf.SinkVertexError) as err:
            pf.validate(game)
        assert err.value.vertex == 0

    def test_dangling_edge(self):
        game = pf.ParityGame([0, 1], [0, 1], [[1], [5]])
        with pytest.raises(pf.DanglingEdgeError) as err:
            pf.validate(game)
        assert (err.value.vertex, err.value.target) == (1, 5)

    def test_duplicate_edge(self):
        game = pf.ParityGame([0], [0], [[0, 0]])
        with pytest.raises(pf.DuplicateEdgeError) as err:
            pf.validate(game)
        assert (err.value.vertex, err.value.target) == (0, 0)


class TestSortByPriority:
    def test_three_vertex_example(self):
        game = pf.ParityGame([2, 0, 1], [0, 1, 0], [[1], [2], [0]])
        sorted_game, perm = pf.sort_by_priority(game)
        assert sorted_game.priority == (0, 1, 2)
        assert perm.forward == (2, 0, 1)

    def test_already_sorted_gives_identity(self, g1):
        sorted_game, perm = pf.sort_by_priority(g1)
        assert perm.is_identity
        assert sorted_game is g1

    def test_g2_internal_priorities(self, g2):
        sorted_game, _ = pf.sort_by_priority(g2)
        assert sorted_game.priority == (1, 2, 3, 4, 5, 16, 17, 18)

    def test_sort_is_stable(self):
        game = pf.ParityGame([1, 1, 0], [0, 1, 0], [[0], [1], [2]], original_id=[10, 11, 12])
        sorted_game, _ = pf.sort_by_priority(game)
        assert sorted_game.original_id == (12, 10, 11)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 10**9))
    def test_backward_permutation_roundtrip(self, seed):
        game = seeded_game(seed)
        sorted_game, perm = pf.sort_by_priority(game)
        back = pf.apply_backward(sorted_game, perm)
        assert back.priority == game.priority
        assert back.owner == game.owner
        assert back.successors == game.successors
        assert back.original_id == game.original_id

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10**9))
    def test_permutation_is_bijective(self, seed):
        game = seeded_game(seed)
        _, perm = pf.sort_by_priority(game)
        n = game.n
        assert sorted(perm.forward) == list(range(n))
        assert all(perm.backward[perm.forward[v]] == v for v in range(n))


class TestStats:
    def test_g1(self, g1):
        s = pf.game_stats(g1)
        assert (s.n, s.edges, s.max_priority) == (2, 3, 2)
        assert s.avg_outdegree == pytest.approx(1.5)

    def test_g2(self, g2):
        s = pf.game_stats(g2)
        assert (s.n, s.edges, s.max_priority) == (8, 12, 18)

    def test_empty(self):
        s = pf.game_stats(pf.ParityGame([], [], []))
        assert (s.n, s.edges, s.max_priority, s.avg_outdegree) == (0, 0, 0, 0.0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_priority_bounds_and_left_totality(seed):
    game = seeded_game(seed)
    pf.validate(game)
    d = game.max_priority
    for v in range(game.n):
        assert 0 <= game.priority[v] <= d
        assert len(game.successors[v]) >= 1
