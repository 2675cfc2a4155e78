"""Machine-readable documents: game dumps, solve results, simulation reports.

All documents are schema-versioned JSON-compatible dictionaries. States are
labeled by 1-based index plus their bit pattern (node 1 leftmost); actions
are labeled by node name, with ``"nothing"`` for doing nothing.
"""

from __future__ import annotations

import numpy as np

from .builder import StochasticGame
from .errors import ParseError, ValidationError
from .simulate import SimulationReport
from .solver import SolveResult

GAME_SCHEMA = "secgame.game/1"
SOLVE_SCHEMA = "secgame.solve/1"
SIMULATE_SCHEMA = "secgame.simulate/1"

DO_NOTHING_LABEL = "nothing"


def default_names(node_count: int) -> tuple:
    return tuple(str(i + 1) for i in range(node_count))


def _action_labels(actions, names):
    return [DO_NOTHING_LABEL if a is None else names[a] for a in actions]


def _pattern(state) -> str:
    return "".join(str(b) for b in state.pattern)


def game_to_dict(game: StochasticGame, names=None) -> dict:
    """Dump every game element: actions, payoffs, transitions, end probabilities.

    Transition rows are stored sparsely as ``{"<1-based state>": prob}`` with
    the end probability under ``"end"``.
    """
    names = names or default_names(game.space.node_count)
    states = []
    for element, state in zip(game.elements, game.space.states):
        m, n = element.payoff.shape
        rows = []
        for i in range(m):
            row = []
            for j in range(n):
                lottery = {
                    str(l + 1): element.transitions[i, j, l]
                    for l in np.nonzero(element.transitions[i, j])[0]
                }
                lottery["end"] = float(element.end_prob[i, j])
                row.append(lottery)
            rows.append(row)
        states.append({
            "index": element.state_index + 1,
            "pattern": _pattern(state),
            "attacker_actions": _action_labels(element.actions.attacker, names),
            "defender_actions": _action_labels(element.actions.defender, names),
            "payoff": element.payoff.tolist(),
            "transitions": rows,
        })
    return {
        "schema": GAME_SCHEMA,
        "action_mode": game.action_mode,
        "nodes": list(names),
        "states": states,
    }


def solve_result_to_dict(result: SolveResult, game: StochasticGame, names=None,
                         tolerance=None) -> dict:
    names = names or default_names(game.space.node_count)
    states = []
    for k, (element, state) in enumerate(zip(game.elements, game.space.states)):
        states.append({
            "index": k + 1,
            "pattern": _pattern(state),
            "value": float(result.values[k]),
            "attacker": {
                "actions": _action_labels(element.actions.attacker, names),
                "probs": result.attacker_strategies[k].tolist(),
            },
            "defender": {
                "actions": _action_labels(element.actions.defender, names),
                "probs": result.defender_strategies[k].tolist(),
            },
        })
    doc = {
        "schema": SOLVE_SCHEMA,
        "action_mode": game.action_mode,
        "nodes": list(names),
        "iterations": result.iterations,
        "residual": result.residual,
        "states": states,
    }
    if tolerance is not None:
        doc["tolerance"] = tolerance
    return doc


def strategies_from_solve_dict(doc, game: StochasticGame, names=None):
    """Recover per-state strategy profiles from a solve document.

    Checks the document's action labels against the game's action sets and
    reports the first mismatching state, so strategies solved under a
    different action mode or network cannot be replayed silently.
    """
    names = names or default_names(game.space.node_count)
    if not isinstance(doc, dict) or doc.get("schema") != SOLVE_SCHEMA:
        raise ParseError(f"strategy document must carry schema {SOLVE_SCHEMA!r}")
    states = doc.get("states")
    if not isinstance(states, list) or len(states) != game.size:
        raise ValidationError(
            f"strategy document has {len(states) if isinstance(states, list) else 'no'} "
            f"states, game has {game.size}"
        )
    attacker = []
    defender = []
    for k, (entry, element) in enumerate(zip(states, game.elements)):
        for side, actions in (("attacker", element.actions.attacker),
                              ("defender", element.actions.defender)):
            block = entry.get(side)
            if not isinstance(block, dict):
                raise ParseError(f"states[{k}].{side}: expected an object")
            expected = _action_labels(actions, names)
            if block.get("actions") != expected:
                raise ValidationError(
                    f"state {entry.get('index', k + 1)}: {side} actions "
                    f"{block.get('actions')} do not match the game's {expected}"
                )
            probs = np.asarray(block.get("probs", []), dtype=float)
            if probs.shape != (len(expected),):
                raise ValidationError(
                    f"state {entry.get('index', k + 1)}: {side} strategy length "
                    f"{probs.size} does not match {len(expected)} actions"
                )
            (attacker if side == "attacker" else defender).append(probs)
    return tuple(attacker), tuple(defender)


def values_from_solve_dict(doc) -> np.ndarray:
    if not isinstance(doc, dict) or doc.get("schema") != SOLVE_SCHEMA:
        raise ParseError(f"solve document must carry schema {SOLVE_SCHEMA!r}")
    return np.array([entry["value"] for entry in doc["states"]], dtype=float)


def simulation_report_to_dict(report: SimulationReport, game: StochasticGame) -> dict:
    entries = []
    for entry in report.per_state:
        state = game.space.states[entry.state_index]
        entries.append({
            "index": entry.state_index + 1,
            "pattern": _pattern(state),
            "episodes": entry.episodes,
            "mean_payoff": entry.mean_payoff,
            "std_error": entry.std_error,
            "mean_episode_length": entry.mean_episode_length,
        })
    return {
        "schema": SIMULATE_SCHEMA,
        "seed": report.seed,
        "episodes": report.episodes,
        "states": entries,
    }
