"""Command-line front end.

Subcommands
-----------
validate   parse a configuration, print derived quantities and every check
describe   summarise the state space; optionally dump the built game
solve      run value iteration, print strategy and value tables
simulate   Monte Carlo play-out under optimal or supplied strategies
matgame    debug helper: solve a single matrix game from a file

Exit codes: 0 success, 2 parse error, 3 validation error, 4 no convergence.
The SECGAME_LOG environment variable only adjusts log verbosity.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys

import numpy as np

from . import __version__
from .builder import build_game, expand_strategy
from .config import check_config, example_config_path, load_config, parse_config
from .errors import ConvergenceError, ParseError, ValidationError
from .matgame import solve_matrix_game
from .serialize import (
    game_to_dict,
    simulation_report_to_dict,
    solve_result_to_dict,
    strategies_from_solve_dict,
)
from .simulate import simulate
from .solver import solve_game

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_NO_CONVERGENCE = 4


def _print_table(headers, rows, out):
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    line = "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))
    print(line, file=out)
    print("-" * len(line), file=out)
    for row in rows:
        print("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)), file=out)


def _state_label(index, state):
    return f"{index + 1} ({','.join(str(b) for b in state.pattern)})"


def _strategy_rows(game, strategies, names, attacker):
    n = game.space.node_count
    rows = []
    for k, element in enumerate(game.elements):
        full = expand_strategy(element, strategies[k], n, attacker=attacker)
        rows.append([_state_label(k, game.space.states[k])]
                    + [f"{v:.4f}" for v in full])
    return rows


def _print_solution(game, result, names, out):
    headers = ["GE"] + [f"Node {name}" for name in names] + ["Do nothing"]
    print("Optimal attacker strategies", file=out)
    _print_table(headers, _strategy_rows(game, result.attacker_strategies, names, True), out)
    print("", file=out)
    print("Optimal defender strategies", file=out)
    _print_table(headers, _strategy_rows(game, result.defender_strategies, names, False), out)
    print("", file=out)
    print("Value vector", file=out)
    value_rows = [
        [_state_label(k, game.space.states[k]), f"{result.values[k]:.4f}"]
        for k in range(game.size)
    ]
    _print_table(["GE", "Value"], value_rows, out)
    print("", file=out)
    print(f"Converged in {result.iterations} iterations "
          f"(residual {result.residual:.3g})", file=out)


def _write_json(path, doc):
    with open(path, "w") as handle:
        json.dump(doc, handle, indent=2)
        handle.write("\n")


def _parse_start_state(text, game):
    n = game.space.node_count
    if len(text) == n and set(text) <= {"0", "1"}:
        return int(text, 2)
    try:
        index = int(text)
    except ValueError:
        raise ParseError(
            f"--start-state must be a 1-based index or an n-bit pattern, got {text!r}"
        ) from None
    if not 1 <= index <= game.size:
        raise ValidationError(f"start state {index} out of range 1..{game.size}")
    return index - 1


def cmd_validate(args, out):
    raw = parse_config(json.loads(_read(args.config)), source=args.config)
    names = raw.names
    print(f"nodes: {', '.join(names)}", file=out)
    print("\ninfluence matrix (column j = shares of node j's asset):", file=out)
    for i, name in enumerate(names):
        row = "  ".join(f"{raw.influence[i, j]:8.4f}" for j in range(len(names)))
        print(f"  {name:>8}  {row}", file=out)
    print("\nindependent assets:", "  ".join(f"{v:g}" for v in raw.assets), file=out)
    print("effective assets:  ",
          "  ".join(f"{v:g}" for v in raw.influence @ raw.assets), file=out)
    print("supports:          ",
          "  ".join(f"{v:g}" for v in raw.support.sum(axis=0)), file=out)
    problems = check_config(raw)
    print(file=out)
    if problems:
        for problem in problems:
            print(f"FAIL  {problem}", file=out)
        raise ValidationError(f"{len(problems)} validation failure(s)", problems)
    print("all checks passed", file=out)
    return EXIT_OK


def _load(args):
    config = load_config(args.config)
    mode = getattr(args, "action_mode", None) or config.solver.action_mode
    game = build_game(config.state_space(), mode)
    return config, game


def cmd_describe(args, out):
    config, game = _load(args)
    names = config.node_names
    headers = ["state", "alive", "effective assets", "attack values", "supports"]
    rows = []
    for k, state in enumerate(game.space.states):
        red = game.space.reductions[k]
        rows.append([
            _state_label(k, state),
            ",".join(names[i] for i in red.alive) or "-",
            " ".join(f"{v:.4g}" for v in red.effective_assets) or "-",
            " ".join(f"{v:.4g}" for v in red.attack_values) or "-",
            " ".join(f"{v:.3g}" for v in red.supports) or "-",
        ])
    _print_table(headers, rows, out)
    print(f"\n{game.size} states, action mode {game.action_mode!r}, "
          f"max continue probability {game.contraction_factor():.6g}", file=out)
    if args.dump_game:
        _write_json(args.dump_game, game_to_dict(game, names))
        print(f"wrote game dump to {args.dump_game}", file=out)
    return EXIT_OK


def cmd_solve(args, out):
    config, game = _load(args)
    tol = args.tol if args.tol is not None else config.solver.tolerance
    max_iters = args.max_iters if args.max_iters is not None else config.solver.max_iters
    result = solve_game(game, tol=tol, max_iters=max_iters)
    _print_solution(game, result, config.node_names, out)
    if args.out:
        _write_json(args.out, solve_result_to_dict(result, game, config.node_names, tolerance=tol))
        print(f"wrote solve result to {args.out}", file=out)
    if args.dump_game:
        _write_json(args.dump_game, game_to_dict(game, config.node_names))
        print(f"wrote game dump to {args.dump_game}", file=out)
    return EXIT_OK


def _do_nothing_profile(game):
    attacker = []
    defender = []
    for element in game.elements:
        y = np.zeros(len(element.actions.attacker))
        z = np.zeros(len(element.actions.defender))
        y[-1] = z[-1] = 1.0
        attacker.append(y)
        defender.append(z)
    return tuple(attacker), tuple(defender)


def cmd_simulate(args, out):
    config, game = _load(args)
    names = config.node_names
    values = None
    if args.strategies == "optimal":
        result = solve_game(game, tol=config.solver.tolerance,
                            max_iters=config.solver.max_iters)
        attacker, defender = result.attacker_strategies, result.defender_strategies
        values = result.values
    elif args.strategies == "do-nothing":
        attacker, defender = _do_nothing_profile(game)
    else:
        doc = json.loads(_read(args.strategies))
        attacker, defender = strategies_from_solve_dict(doc, game, names)

    start = None if args.start_state is None else [_parse_start_state(args.start_state, game)]
    report = simulate(game, attacker, defender,
                      episodes=args.episodes, seed=args.seed, start_states=start)
    headers = ["state", "episodes", "mean payoff", "std error", "mean length"]
    if values is not None:
        headers.append("solver value")
    rows = []
    for entry in report.per_state:
        row = [
            _state_label(entry.state_index, game.space.states[entry.state_index]),
            str(entry.episodes),
            f"{entry.mean_payoff:.4f}",
            f"{entry.std_error:.4f}",
            f"{entry.mean_episode_length:.2f}",
        ]
        if values is not None:
            row.append(f"{values[entry.state_index]:.4f}")
        rows.append(row)
    _print_table(headers, rows, out)
    if args.out:
        _write_json(args.out, simulation_report_to_dict(report, game))
        print(f"wrote simulation report to {args.out}", file=out)
    return EXIT_OK


def cmd_matgame(args, out):
    text = _read(args.matrix)
    if args.matrix.endswith(".json"):
        matrix = np.array(json.loads(text), dtype=float)
    else:
        matrix = np.atleast_2d(np.loadtxt(io.StringIO(text)))
    solution = solve_matrix_game(matrix)
    print(f"value: {solution.value:.10g}", file=out)
    print("row strategy:", " ".join(f"{v:.6f}" for v in solution.row_strategy), file=out)
    print("col strategy:", " ".join(f"{v:.6f}" for v in solution.col_strategy), file=out)
    return EXIT_OK


def _read(path):
    try:
        with open(path) as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="secgame",
        description="Solve and simulate security games on linear influence networks.",
        epilog=f"A ready-made example configuration ships at {example_config_path()}",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    val = sub.add_parser("validate", help="check a configuration and print derived quantities")
    val.add_argument("config")
    val.set_defaults(func=cmd_validate)

    desc = sub.add_parser("describe", help="summarise the state space and game")
    desc.add_argument("config")
    desc.add_argument("--action-mode", choices=("reduced", "full"))
    desc.add_argument("--dump-game", metavar="FILE", help="write the game dump as JSON")
    desc.set_defaults(func=cmd_describe)

    slv = sub.add_parser("solve", help="compute the value vector and optimal strategies")
    slv.add_argument("config")
    slv.add_argument("--tol", type=float, default=None)
    slv.add_argument("--max-iters", type=int, default=None)
    slv.add_argument("--action-mode", choices=("reduced", "full"))
    slv.add_argument("--out", metavar="FILE", help="write the solve result as JSON")
    slv.add_argument("--dump-game", metavar="FILE", help="write the game dump as JSON")
    slv.set_defaults(func=cmd_solve)

    sim = sub.add_parser("simulate", help="Monte Carlo play-out of the game")
    sim.add_argument("config")
    sim.add_argument("--episodes", type=int, default=10_000)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--start-state", default=None,
                     help="1-based state index or bit pattern; default: all states")
    sim.add_argument("--strategies", default="optimal",
                     help="'optimal' (default), 'do-nothing', or a solve-result JSON file")
    sim.add_argument("--action-mode", choices=("reduced", "full"))
    sim.add_argument("--out", metavar="FILE", help="write the report as JSON")
    sim.set_defaults(func=cmd_simulate)

    mg = sub.add_parser("matgame", help="matrix game debugging helpers")
    mg_sub = mg.add_subparsers(dest="matgame_command", required=True)
    mg_solve = mg_sub.add_parser("solve", help="solve one matrix game from a file")
    mg_solve.add_argument("matrix", help="matrix file (.json nested lists, else whitespace text)")
    mg_solve.set_defaults(func=cmd_matgame)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("SECGAME_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except json.JSONDecodeError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ParseError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        for problem in exc.violations:
            print(f"error: validation: {problem}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
