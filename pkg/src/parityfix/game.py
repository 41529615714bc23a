"""Parity game data model.

A game is a finite directed graph in which every vertex carries a priority
and an owner, and every vertex has at least one outgoing edge.  Games are
immutable once constructed; transforms always build new objects.  Vertices
are dense indices 0..n-1.  The original (possibly sparse) identifiers from
an input file are kept per vertex so that results can be written back in
the caller's namespace.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class Player(IntEnum):
    """The two players.  Integer values follow parity arithmetic."""

    EVEN = 0
    ODD = 1

    @property
    def opponent(self) -> "Player":
        return Player(1 - self.value)

    @classmethod
    def of_parity(cls, priority: int) -> "Player":
        """The player that likes seeing ``priority`` infinitely often."""
        return cls(priority & 1)


class ValidationError(Exception):
    """A parity game invariant does not hold."""


class SinkVertexError(ValidationError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has no successors")


class DanglingEdgeError(ValidationError):
    def __init__(self, vertex: int, target: int, message: str | None = None):
        self.vertex = vertex
        self.target = target
        super().__init__(message or f"edge {vertex} -> {target} leaves the vertex range")


class DuplicateEdgeError(ValidationError):
    def __init__(self, vertex: int, target: int):
        self.vertex = vertex
        self.target = target
        super().__init__(f"duplicate edge {vertex} -> {target}")


class ParityGame:
    """Immutable indexed parity game.

    ``priority``, ``owner``, ``successors``, ``original_id`` and ``label``
    are parallel tuples indexed by vertex.  Successor lists keep their
    construction order; solvers use that order for deterministic
    tie-breaking.
    """

    def __init__(
        self,
        priority: Sequence[int],
        owner: Sequence[Player | int],
        successors: Sequence[Iterable[int]],
        original_id: Sequence[int] | None = None,
        label: Sequence[str | None] | None = None,
    ):
        n = len(priority)
        if len(owner) != n or len(successors) != n:
            raise ValueError("priority, owner and successors must have equal length")
        if original_id is not None and len(original_id) != n:
            raise ValueError("original_id length mismatch")
        if label is not None and len(label) != n:
            raise ValueError("label length mismatch")
        self.priority: tuple[int, ...] = tuple(int(p) for p in priority)
        if any(p < 0 for p in self.priority):
            raise ValueError("priorities must be nonnegative")
        self.owner: tuple[Player, ...] = tuple(Player(o) for o in owner)
        self.successors: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(u) for u in succ) for succ in successors
        )
        self.original_id: tuple[int, ...] = (
            tuple(int(i) for i in original_id) if original_id is not None else tuple(range(n))
        )
        self.label: tuple[str | None, ...] = tuple(label) if label is not None else (None,) * n

    @property
    def n(self) -> int:
        return len(self.priority)

    def __len__(self) -> int:
        return self.n

    @cached_property
    def max_priority(self) -> int:
        """Highest priority in the game; 0 for the empty game."""
        return max(self.priority, default=0)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.successors)

    def has_self_loop(self, v: int) -> bool:
        return v in self.successors[v]

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        """Reverse adjacency, built lazily and cached."""
        preds: list[list[int]] = [[] for _ in range(self.n)]
        for v, succ in enumerate(self.successors):
            for u in succ:
                preds[u].append(v)
        return tuple(tuple(p) for p in preds)

    @cached_property
    def is_priority_sorted(self) -> bool:
        pr = self.priority
        return all(pr[i] <= pr[i + 1] for i in range(len(pr) - 1))

    # Plain-int mirrors of owner/priority parity; the solver's scalar hot
    # loops index these instead of enum tuples.
    @cached_property
    def _owner_ints(self) -> tuple[int, ...]:
        return tuple(int(o) for o in self.owner)

    @cached_property
    def _parity_ints(self) -> tuple[int, ...]:
        return tuple(p & 1 for p in self.priority)

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(indptr, targets, edge source owner bit) in CSR layout."""
        n = self.n
        if n >= 2**31:
            raise ValueError("games this large are not supported")
        indptr = np.zeros(n + 1, dtype=np.int64)
        for v, succ in enumerate(self.successors):
            indptr[v + 1] = indptr[v] + len(succ)
        targets = np.fromiter(
            (u for succ in self.successors for u in succ),
            dtype=np.int32,
            count=int(indptr[-1]),
        )
        counts = np.diff(indptr)
        edge_owner = np.repeat(np.asarray(self._owner_ints, dtype=np.uint8), counts)
        return indptr, targets, edge_owner

    @cached_property
    def _parity_bits(self) -> np.ndarray:
        return np.fromiter(self._parity_ints, dtype=np.uint8, count=self.n)

    @cached_property
    def levels(self) -> tuple[tuple[int, int, int], ...]:
        """(priority, lo, hi) ranges of equal priority; requires sorted order."""
        if not self.is_priority_sorted:
            raise ValueError("levels are only defined for priority-sorted games")
        out: list[tuple[int, int, int]] = []
        lo = 0
        for i in range(1, self.n + 1):
            if i == self.n or self.priority[i] != self.priority[lo]:
                out.append((self.priority[lo], lo, i))
                lo = i
        return tuple(out)

    def __repr__(self) -> str:
        return f"ParityGame(n={self.n}, edges={self.edge_count}, d={self.max_priority})"


@dataclass(frozen=True)
class SortPermutation:
    """Bijection between external vertex order and priority-sorted order."""

    forward: tuple[int, ...]  # external index -> internal index
    backward: tuple[int, ...]  # internal index -> external index

    @classmethod
    def identity(cls, n: int) -> "SortPermutation":
        ident = tuple(range(n))
        return cls(ident, ident)

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.forward))


@dataclass(frozen=True)
class Solution:
    """Winning regions and positional strategies for one game.

    ``winner[v]`` is the player that wins vertex v.  ``strategy[v]`` is the
    chosen successor for vertices owned by their winner; ``None`` elsewhere
    (and everywhere for region-only solvers).
    """

    winner: tuple[Player, ...]
    strategy: tuple[int | None, ...]

    def region(self, player: Player) -> frozenset[int]:
        return frozenset(v for v, w in enumerate(self.winner) if w is player)

    @property
    def n(self) -> int:
        return len(self.winner)


@dataclass(frozen=True)
class GameStats:
    n: int
    edges: int
    max_priority: int
    distinct_priorities: int
    avg_outdegree: float


def validate(game: ParityGame) -> None:
    """Check the structural invariants; raise ValidationError on the first hit."""
    n = game.n
    for v, succ in enumerate(game.successors):
        if not succ:
            raise SinkVertexError(v)
        seen: set[int] = set()
        for u in succ:
            if u < 0 or u >= n:
                raise DanglingEdgeError(v, u)
            if u in seen:
                raise DuplicateEdgeError(v, u)
            seen.add(u)


def sort_by_priority(game: ParityGame) -> tuple[ParityGame, SortPermutation]:
    """Reorder vertices so priorities are nondecreasing (stable).

    Returns the reordered game together with the permutation that connects
    the two vertex orders.  Already-sorted games are returned as-is with an
    identity permutation.
    """
    n = game.n
    if game.is_priority_sorted:
        return game, SortPermutation.identity(n)
    backward = tuple(sorted(range(n), key=lambda v: game.priority[v]))
    forward_list = [0] * n
    for internal, external in enumerate(backward):
        forward_list[external] = internal
    forward = tuple(forward_list)
    sorted_game = ParityGame(
        priority=[game.priority[e] for e in backward],
        owner=[game.owner[e] for e in backward],
        successors=[[forward[u] for u in game.successors[e]] for e in backward],
        original_id=[game.original_id[e] for e in backward],
        label=[game.label[e] for e in backward],
    )
    return sorted_game, SortPermutation(forward, backward)


def apply_backward(sorted_game: ParityGame, perm: SortPermutation) -> ParityGame:
    """Undo sort_by_priority, reproducing the original vertex order."""
    if perm.is_identity:
        return sorted_game
    fwd = perm.forward
    return ParityGame(
        priority=[sorted_game.priority[fwd[v]] for v in range(sorted_game.n)],
        owner=[sorted_game.owner[fwd[v]] for v in range(sorted_game.n)],
        successors=[
            [perm.backward[u] for u in sorted_game.successors[fwd[v]]]
            for v in range(sorted_game.n)
        ],
        original_id=[sorted_game.original_id[fwd[v]] for v in range(sorted_game.n)],
        label=[sorted_game.label[fwd[v]] for v in range(sorted_game.n)],
    )


def game_stats(game: ParityGame) -> GameStats:
    """Exact size counters used by the CLI and the bench harness."""
    n = game.n
    edges = game.edge_count
    return GameStats(
        n=n,
        edges=edges,
        max_priority=game.max_priority,
        distinct_priorities=len(set(game.priority)),
        avg_outdegree=(edges / n) if n else 0.0,
    )
