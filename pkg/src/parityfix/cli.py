"""Command line front end: solve, verify, gen, bench, stats.

Exit codes: 0 solved/ok, 1 verification failure, 2 I/O or parse error,
3 invalid flags.  All file I/O speaks the PGSolver formats; sorting and
index remapping stay internal, users only ever see their own vertex ids.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .fixpoint import FixpointTimeoutError, bfl_win0
from .formats import ParseError, parse_pgsolver, parse_solution, write_pgsolver, write_solution
from .game import ParityGame, Player, Solution, ValidationError, game_stats
from .generator import GenParams, InvalidParamsError, random_game
from .preprocess import apply_preprocessing, compose_solution
from .solver import SolverOptions, SolverStats, SolveTimeoutError, solve_detailed
from .verifier import verify
from .zielonka import ZielonkaTimeoutError, solve_zielonka

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_IO = 2
EXIT_USAGE = 3

SOLVERS = ("dfi", "dfi-basic", "zlk", "bfl")
REGION_ONLY_SOLVERS = ("dfi-basic", "bfl")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2; the contract wants 3
        raise _UsageError(message)


def _read_game(path: str) -> ParityGame:
    text = Path(path).read_text()
    return parse_pgsolver(text)


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("DFI_WORKERS", "1")))
    except ValueError:
        return 1


def _run_solver(
    residual: ParityGame,
    solver: str,
    *,
    workers: int = 1,
    in_place: bool = False,
    timeout_s: float | None = None,
) -> tuple[Solution, SolverStats | None]:
    if solver in ("dfi", "dfi-basic"):
        options = SolverOptions(
            mode="freezing" if solver == "dfi" else "basic",
            pass_semantics="in_place" if in_place else "snapshot",
            workers=1 if in_place else workers,
            timeout_s=timeout_s,
        )
        outcome = solve_detailed(residual, options)
        return outcome.solution, outcome.stats
    if solver == "zlk":
        return solve_zielonka(residual, timeout_s=timeout_s), None
    if solver == "bfl":
        win0 = bfl_win0(residual, timeout_s=timeout_s)
        winner = tuple(Player.EVEN if v in win0 else Player.ODD for v in range(residual.n))
        return Solution(winner, (None,) * residual.n), None
    raise _UsageError(f"unknown solver {solver!r}")


def _solve_game(
    game: ParityGame,
    solver: str,
    *,
    preprocess: bool,
    workers: int = 1,
    in_place: bool = False,
    timeout_s: float | None = None,
) -> tuple[Solution, SolverStats | None]:
    if preprocess:
        partials, residual = apply_preprocessing(game)
    else:
        partials, residual = [], game
    solution, stats = _run_solver(
        residual, solver, workers=workers, in_place=in_place, timeout_s=timeout_s
    )
    return compose_solution(partials, solution), stats


def _cmd_solve(args) -> int:
    if args.verify and args.solver in REGION_ONLY_SOLVERS:
        raise _UsageError(f"--verify needs strategies; solver {args.solver!r} emits regions only")
    workers = args.workers if args.workers is not None else _default_workers()
    try:
        game = _read_game(args.game)
    except (OSError, ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    solution, stats = _solve_game(
        game,
        args.solver,
        preprocess=not args.no_preprocess,
        workers=workers,
        in_place=args.in_place,
    )
    if args.verify:
        report = verify(game, solution)
        if not report.ok:
            for violation in report.violations:
                print(violation.describe(game), file=sys.stderr)
            return EXIT_VERIFICATION
    text = write_solution(game, solution)
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    if args.stats and stats is not None:
        print(
            f"passes={stats.passes} additions={stats.additions} resets={stats.resets} "
            f"freezes={stats.freezes} time_s={stats.wall_time_s:.6f}",
            file=sys.stderr,
        )
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        game = _read_game(args.game)
        solution = parse_solution(Path(args.solution).read_text(), game)
    except (OSError, ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    report = verify(game, solution)
    if report.ok:
        return EXIT_OK
    for violation in report.violations:
        print(violation.describe(game))
    return EXIT_VERIFICATION


def _cmd_gen(args) -> int:
    try:
        params = GenParams(
            n=args.n,
            max_priority=args.d,
            outdegree_lo=args.outdeg[0],
            outdegree_hi=args.outdeg[1],
            self_loop_probability=args.self_loops,
            seed=args.seed,
        )
    except InvalidParamsError as exc:
        raise _UsageError(str(exc))
    text = write_pgsolver(random_game(params))
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_stats(args) -> int:
    try:
        game = _read_game(args.game)
    except (OSError, ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    st = game_stats(game)
    print(f"n={st.n} edges={st.edges} d={st.max_priority}")
    print(f"distinct_priorities={st.distinct_priorities} avg_outdegree={st.avg_outdegree:.3f}")
    return EXIT_OK


_BENCH_COLUMNS = [
    "game",
    "solver",
    "preprocess",
    "time_s",
    "outcome",
    "n",
    "edges",
    "d",
    "passes",
    "additions",
    "resets",
    "freezes",
]


def _bench_row(path: Path, solver: str, preprocess: bool, timeout_s: float, reps: int, workers: int):
    name = path.name
    pre = "1" if preprocess else "0"
    try:
        game = parse_pgsolver(path.read_text())
    except Exception:
        return [name, solver, pre, "", "error", "", "", "", "", "", "", ""]
    st = game_stats(game)
    size = [str(st.n), str(st.edges), str(st.max_priority)]
    times: list[float] = []
    stats: SolverStats | None = None
    for _ in range(reps):
        t0 = time.perf_counter()
        try:
            _, stats = _solve_game(
                game, solver, preprocess=preprocess, workers=workers, timeout_s=timeout_s
            )
        except (SolveTimeoutError, ZielonkaTimeoutError, FixpointTimeoutError):
            return [name, solver, pre, f"{timeout_s:.6f}", "timeout", *size, "", "", "", ""]
        except Exception:  # includes RecursionDepthError and FixpointBudgetError
            return [name, solver, pre, "", "error", *size, "", "", "", ""]
        times.append(time.perf_counter() - t0)
    mean = sum(times) / len(times)
    if stats is not None:
        counters = [str(stats.passes), str(stats.additions), str(stats.resets), str(stats.freezes)]
    else:
        counters = ["", "", "", ""]
    return [name, solver, pre, f"{mean:.6f}", "solved", *size, *counters]


def _cmd_bench(args) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return EXIT_IO
    solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    for s in solvers:
        if s not in SOLVERS:
            raise _UsageError(f"unknown solver {s!r}")
    workers = args.workers if args.workers is not None else _default_workers()
    files = sorted(p for p in directory.iterdir() if p.is_file())
    jobs = [
        (path, solver, preprocess)
        for path in files
        for solver in solvers
        for preprocess in (True, False)
    ]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(_BENCH_COLUMNS)

    def runner(job):
        path, solver, preprocess = job
        return _bench_row(path, solver, preprocess, args.timeout, args.repetitions, workers)

    if args.parallel_games > 1 and jobs:
        with ThreadPoolExecutor(max_workers=args.parallel_games) as pool:
            rows = list(pool.map(runner, jobs))
    else:
        rows = [runner(job) for job in jobs]
    for row in rows:
        writer.writerow(row)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="parityfix", description="Parity game solving toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a game file")
    p_solve.add_argument("game")
    p_solve.add_argument("--solver", choices=SOLVERS, default="dfi")
    p_solve.add_argument("--no-preprocess", action="store_true")
    p_solve.add_argument("--verify", action="store_true", help="check the solution before writing")
    p_solve.add_argument("-o", "--output")
    p_solve.add_argument("--workers", type=int, default=None, help="dfi only; default $DFI_WORKERS or 1")
    p_solve.add_argument("--in-place", action="store_true", help="dfi only; sequential pass updates")
    p_solve.add_argument("--stats", action="store_true", help="print solver counters to stderr")
    p_solve.set_defaults(func=_cmd_solve)

    p_verify = sub.add_parser("verify", help="check a solution file against a game")
    p_verify.add_argument("game")
    p_verify.add_argument("solution")
    p_verify.set_defaults(func=_cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a seeded random game")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--d", type=int, required=True, help="maximum priority")
    p_gen.add_argument("--outdeg", type=int, nargs=2, default=[1, 3], metavar=("LO", "HI"))
    p_gen.add_argument("--self-loops", type=float, default=0.1)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("-o", "--output")
    p_gen.set_defaults(func=_cmd_gen)

    p_bench = sub.add_parser("bench", help="time solvers over a directory of games, CSV to stdout")
    p_bench.add_argument("dir")
    p_bench.add_argument("--solvers", default="dfi")
    p_bench.add_argument("--timeout", type=float, default=1800.0)
    p_bench.add_argument("--repetitions", type=int, default=5)
    p_bench.add_argument("--parallel-games", type=int, default=1)
    p_bench.add_argument("--workers", type=int, default=None)
    p_bench.set_defaults(func=_cmd_bench)

    p_stats = sub.add_parser("stats", help="print size counters for a game")
    p_stats.add_argument("game")
    p_stats.set_defaults(func=_cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
