"""Independent checking of claimed solutions.

A solution is accepted when, for each player's claimed region: the
opponent cannot leave it, every region vertex owned by the claimant has a
strategy edge staying inside it, and in the graph restricted to strategy
edges (claimant) plus all region-internal edges (opponent) every cycle's
maximum priority has the claimant's parity.  The cycle condition is
checked by peeling: SCC-decompose, test the maximum priority of every
cyclic component, drop the maximum-priority vertices, repeat.

These checks are sound and complete for regions: a wrong winner map cannot
pass them, because passing means both claimed regions are genuinely won.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .game import ParityGame, Player, Solution


@dataclass(frozen=True)
class EscapeEdge:
    vertex: int
    target: int

    def describe(self, game: ParityGame) -> str:
        return (
            f"EscapeEdge: vertex {game.original_id[self.vertex]} can leave its "
            f"claimed region via {game.original_id[self.target]}"
        )


@dataclass(frozen=True)
class MissingStrategy:
    vertex: int

    def describe(self, game: ParityGame) -> str:
        return f"MissingStrategy: vertex {game.original_id[self.vertex]} has no strategy"


@dataclass(frozen=True)
class StrategyLeavesRegion:
    vertex: int
    target: int

    def describe(self, game: ParityGame) -> str:
        return (
            f"StrategyLeavesRegion: strategy {game.original_id[self.vertex]} -> "
            f"{game.original_id[self.target]} is not a region-internal edge"
        )


@dataclass(frozen=True)
class LosingCycleWitness:
    cycle: tuple[int, ...]
    max_priority: int

    def describe(self, game: ParityGame) -> str:
        ids = ",".join(str(game.original_id[v]) for v in self.cycle)
        return f"LosingCycleWitness: cycle [{ids}] has hostile maximum priority {self.max_priority}"


Violation = EscapeEdge | MissingStrategy | StrategyLeavesRegion | LosingCycleWitness


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: tuple[Violation, ...]


def _components(subset: list[int], adj: dict[int, list[int]]) -> list[tuple[list[int], bool]]:
    """Tarjan over ``subset`` with edges filtered to it; (vertices, cyclic)."""
    inside = set(subset)
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    out: list[tuple[list[int], bool]] = []
    for root in subset:
        if root in index:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, si = work[-1]
            if si == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            edges = adj[v]
            while si < len(edges):
                u = edges[si]
                si += 1
                if u not in inside:
                    continue
                if u not in index:
                    work[-1] = (v, si)
                    work.append((u, 0))
                    advanced = True
                    break
                if u in on_stack and index[u] < lowlink[v]:
                    lowlink[v] = index[u]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if lowlink[v] < lowlink[parent]:
                    lowlink[parent] = lowlink[v]
            if lowlink[v] == index[v]:
                comp: list[int] = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                cyclic = len(comp) > 1 or any(u == comp[0] for u in adj[comp[0]])
                out.append((comp, cyclic))
    return out


def _witness_cycle(comp: list[int], adj: dict[int, list[int]], anchor: int) -> tuple[int, ...]:
    """A cycle through ``anchor`` inside its strongly connected component.

    Witnesses are for debugging; no minimality is attempted beyond a BFS.
    """
    inside = set(comp)
    if anchor in adj[anchor]:
        return (anchor,)
    parent: dict[int, int] = {}
    queue: deque[int] = deque()
    found = False
    for s in adj[anchor]:
        if s in inside and s not in parent:
            parent[s] = anchor
            queue.append(s)
    while queue and not found:
        x = queue.popleft()
        for y in adj[x]:
            if y in inside and y not in parent:
                parent[y] = x
                if y == anchor:
                    found = True
                    break
                queue.append(y)
    if not found:  # strong connectivity makes this unreachable
        return (anchor,)
    nodes: list[int] = []
    cur = parent[anchor]
    while cur != anchor:
        nodes.append(cur)
        cur = parent[cur]
    nodes.reverse()
    return (anchor, *nodes)


def verify(game: ParityGame, sol: Solution) -> VerificationReport:
    """Check a claimed solution; all problems come back as report entries."""
    if sol.n != game.n:
        raise ValueError("solution does not match the game")
    violations: list[Violation] = []
    for player in (Player.EVEN, Player.ODD):
        region = {v for v in range(game.n) if sol.winner[v] is player}
        adj: dict[int, list[int]] = {}
        for v in region:
            if game.owner[v] is player:
                s = sol.strategy[v]
                if s is None:
                    violations.append(MissingStrategy(v))
                    adj[v] = []
                elif s not in game.successors[v] or s not in region:
                    violations.append(StrategyLeavesRegion(v, s))
                    adj[v] = []
                else:
                    adj[v] = [s]
            else:
                kept: list[int] = []
                for u in game.successors[v]:
                    if u in region:
                        kept.append(u)
                    else:
                        violations.append(EscapeEdge(v, u))
                adj[v] = kept
        work: list[list[int]] = [sorted(region)]
        while work:
            subset = work.pop()
            if not subset:
                continue
            for comp, cyclic in _components(subset, adj):
                if not cyclic:
                    continue
                pmax = max(game.priority[v] for v in comp)
                if pmax & 1 != int(player):
                    anchor = min(v for v in comp if game.priority[v] == pmax)
                    violations.append(LosingCycleWitness(_witness_cycle(comp, adj, anchor), pmax))
                rest = [v for v in comp if game.priority[v] != pmax]
                if rest:
                    work.append(rest)
    return VerificationReport(not violations, tuple(violations))
