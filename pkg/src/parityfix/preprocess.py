"""Optional game reductions applied before solving.

Two passes: self-loop elimination and winner-controlled winning cycle
detection.  Each decides a set of vertices outright (winner plus strategy)
and returns a smaller residual game; solving the residual and composing
gives exactly the solution of the original game.  Soundness comes from the
decided regions being attractor-closed: the loser can never escape them,
and every internal cycle favors the decided winner.
"""

from __future__ import annotations

from dataclasses import dataclass

from .game import ParityGame, Player, Solution, validate
from .graphs import Restriction, attract, sccs


@dataclass(frozen=True)
class PartialSolution:
    """Vertices decided by a reduction, in the parent game's indexing.

    ``to_parent`` maps the residual game's dense indices back to the
    parent's; ``residual.alive`` marks the undecided vertices.
    """

    decided: frozenset[int]
    winner: dict[int, Player]
    strategy: dict[int, int]
    residual: Restriction
    to_parent: tuple[int, ...]


def _extract(game: ParityGame, alive: list[bool], drop_loops: set[int]) -> tuple[ParityGame, tuple[int, ...]]:
    to_parent = tuple(v for v in range(game.n) if alive[v])
    child_index = {v: i for i, v in enumerate(to_parent)}
    successors = []
    for v in to_parent:
        row = [
            child_index[u]
            for u in game.successors[v]
            if alive[u] and not (u == v and v in drop_loops)
        ]
        successors.append(row)
    child = ParityGame(
        priority=[game.priority[v] for v in to_parent],
        owner=[game.owner[v] for v in to_parent],
        successors=successors,
        original_id=[game.original_id[v] for v in to_parent],
        label=[game.label[v] for v in to_parent],
    )
    validate(child)
    return child, to_parent


def eliminate_self_loops(game: ParityGame) -> tuple[PartialSolution, ParityGame]:
    """Decide or drop every self-loop; the residual is self-loop-free.

    A loop whose priority parity matches the owner is an immediate win for
    the owner (keep looping), and the owner's attractor of it is decided
    along.  A loop of hostile parity is simply deleted when the vertex has
    another live successor; when the loop is the only move left, the owner
    is stuck and the parity's player wins, again with its attractor.  The
    "another live successor" test is re-run to a fixpoint because decisions
    can consume a vertex's alternatives.
    """
    n = game.n
    alive = [True] * n
    winner: dict[int, Player] = {}
    strategy: dict[int, int] = {}
    own = game._owner_ints
    par = game._parity_ints
    loopers = [v for v in range(n) if game.has_self_loop(v)]
    changed = True
    while changed:
        changed = False
        for v in loopers:
            if not alive[v]:
                continue
            if par[v] == own[v]:
                beta = Player(own[v])
                region, strat = attract(game, alive, beta, [v], prior_strategy={v: v})
                strategy[v] = v
                strategy.update(strat)
            else:
                if any(alive[u] for u in game.successors[v] if u != v):
                    continue
                beta = Player(par[v])
                region, strat = attract(game, alive, beta, [v])
                strategy.update(strat)
            for w in region:
                winner[w] = beta
                alive[w] = False
            changed = True
    drop = {v for v in loopers if alive[v]}
    residual, to_parent = _extract(game, alive, drop)
    partial = PartialSolution(
        decided=frozenset(winner),
        winner=winner,
        strategy=strategy,
        residual=Restriction(tuple(alive)),
        to_parent=to_parent,
    )
    return partial, residual


def winner_controlled_cycles(game: ParityGame) -> tuple[PartialSolution, ParityGame]:
    """Decide cycles a player fully controls and likes.

    For each player, take the subgraph of vertices they own whose priority
    parity is also theirs; every cyclic SCC there is won outright (all
    priorities on any internal play have the winning parity), so decide
    those SCCs with an in-component strategy plus their attractor.  This is
    deliberately conservative detection; intended for self-loop-free input.
    """
    n = game.n
    alive = [True] * n
    winner: dict[int, Player] = {}
    strategy: dict[int, int] = {}
    own = game._owner_ints
    par = game._parity_ints
    for beta in (Player.EVEN, Player.ODD):
        b = int(beta)
        mask = [alive[v] and own[v] == b and par[v] == b for v in range(n)]
        if not any(mask):
            continue
        seeds: dict[int, int] = {}
        for comp in sccs(game, mask):
            if not comp.cyclic:
                continue
            inside = set(comp.vertices)
            for v in comp.vertices:
                for u in game.successors[v]:
                    if u in inside:
                        seeds[v] = u
                        break
        if not seeds:
            continue
        region, strat = attract(game, alive, beta, sorted(seeds), prior_strategy=seeds)
        strategy.update(seeds)
        strategy.update(strat)
        for w in region:
            winner[w] = beta
            alive[w] = False
    residual, to_parent = _extract(game, alive, set())
    partial = PartialSolution(
        decided=frozenset(winner),
        winner=winner,
        strategy=strategy,
        residual=Restriction(tuple(alive)),
        to_parent=to_parent,
    )
    return partial, residual


def apply_preprocessing(
    game: ParityGame, *, self_loops: bool = True, cycles: bool = True
) -> tuple[list[PartialSolution], ParityGame]:
    """Run the reductions in order; returns the partials plus the residual."""
    partials: list[PartialSolution] = []
    current = game
    if self_loops:
        partial, current = eliminate_self_loops(current)
        partials.append(partial)
    if cycles:
        partial, current = winner_controlled_cycles(current)
        partials.append(partial)
    return partials, current


def lift(partial: PartialSolution, child: Solution) -> Solution:
    """Merge a residual solution into the parent game's vertex space."""
    n = len(partial.residual.alive)
    if child.n != len(partial.to_parent):
        raise ValueError("residual solution does not match the reduction")
    winner: list[Player | None] = [None] * n
    strategy: list[int | None] = [None] * n
    for v, w in partial.winner.items():
        winner[v] = w
    for v, u in partial.strategy.items():
        strategy[v] = u
    for ci, pv in enumerate(partial.to_parent):
        winner[pv] = child.winner[ci]
        cs = child.strategy[ci]
        if cs is not None:
            strategy[pv] = partial.to_parent[cs]
    return Solution(tuple(winner), tuple(strategy))  # type: ignore[arg-type]


def compose_solution(partials: list[PartialSolution], residual_solution: Solution) -> Solution:
    """Fold the reduction chain back up to the original game."""
    sol = residual_solution
    for partial in reversed(partials):
        sol = lift(partial, sol)
    return sol
