"""Parity game solving via distraction fixpoint iteration.

Public surface: the game model, PGSolver-format I/O, the fixpoint solver
(region-only and strategy-computing variants), two independent oracle
solvers, a solution verifier, preprocessing reductions, a seeded game
generator, and a CLI (``parityfix``).
"""

from .fixpoint import (
    FixpointBudgetError,
    FixpointTrace,
    bfl_win0,
    box,
    diamond,
    force,
    onestep_sets,
    winner_partition,
)
from .formats import (
    DuplicateVertexIdError,
    ParseError,
    parse_pgsolver,
    parse_solution,
    write_pgsolver,
    write_solution,
)
from .game import (
    DanglingEdgeError,
    DuplicateEdgeError,
    GameStats,
    ParityGame,
    Player,
    SinkVertexError,
    Solution,
    SortPermutation,
    ValidationError,
    apply_backward,
    game_stats,
    sort_by_priority,
    validate,
)
from .generator import GenParams, InvalidParamsError, SplitMix64, random_game
from .graphs import Component, Restriction, attract, sccs
from .preprocess import (
    PartialSolution,
    apply_preprocessing,
    compose_solution,
    eliminate_self_loops,
    lift,
    winner_controlled_cycles,
)
from .solver import (
    DfiOutcome,
    SolverHooks,
    SolverOptions,
    SolverStats,
    SolveTimeoutError,
    onestep,
    solve,
    solve_basic,
    solve_detailed,
    winner_of,
)
from .verifier import (
    EscapeEdge,
    LosingCycleWitness,
    MissingStrategy,
    StrategyLeavesRegion,
    VerificationReport,
    verify,
)
from .zielonka import RecursionDepthError, solve_zielonka

__version__ = "0.1.0"

__all__ = [
    "ParityGame",
    "Player",
    "Solution",
    "SortPermutation",
    "GameStats",
    "ValidationError",
    "SinkVertexError",
    "DanglingEdgeError",
    "DuplicateEdgeError",
    "validate",
    "sort_by_priority",
    "apply_backward",
    "game_stats",
    "ParseError",
    "DuplicateVertexIdError",
    "parse_pgsolver",
    "write_pgsolver",
    "write_solution",
    "parse_solution",
    "SolverOptions",
    "SolverStats",
    "SolverHooks",
    "DfiOutcome",
    "SolveTimeoutError",
    "winner_of",
    "onestep",
    "solve",
    "solve_basic",
    "solve_detailed",
    "Restriction",
    "Component",
    "attract",
    "sccs",
    "solve_zielonka",
    "RecursionDepthError",
    "FixpointBudgetError",
    "FixpointTrace",
    "diamond",
    "box",
    "force",
    "winner_partition",
    "onestep_sets",
    "bfl_win0",
    "PartialSolution",
    "eliminate_self_loops",
    "winner_controlled_cycles",
    "apply_preprocessing",
    "lift",
    "compose_solution",
    "VerificationReport",
    "EscapeEdge",
    "MissingStrategy",
    "StrategyLeavesRegion",
    "LosingCycleWitness",
    "verify",
    "GenParams",
    "InvalidParamsError",
    "SplitMix64",
    "random_game",
]
