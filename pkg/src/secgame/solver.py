"""Value iteration for the stochastic game and exact policy evaluation.

The game's value vector is the unique fixed point of replacing every game
element by the value of the matrix game formed from its payoffs plus the
transition-weighted continuation values,

    v[k] = val( payoff_k + transitions_k . v ).

Starting from v = 0 the iteration contracts with factor at most the largest
total continue probability, so it converges geometrically; iteration stops
once the sup-norm step drops below the tolerance. Optimal stationary
strategies are read off the matrix games at the final value vector.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .builder import StochasticGame
from .errors import ConvergenceError, ValidationError
from .matgame import solve_matrix_game

log = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-4
DEFAULT_MAX_ITERS = 10_000


@dataclass(frozen=True)
class SolveResult:
    """Value vector, optimal stationary strategies, and convergence diagnostics.

    ``values[k]`` is the expected total payoff to the attacker when play
    starts at state k. Strategy k is a probability vector over the actions of
    game element k. ``residual_history`` records the sup-norm step of every
    iteration, ending with ``residual``.
    """

    values: np.ndarray
    attacker_strategies: tuple
    defender_strategies: tuple
    iterations: int
    residual: float
    residual_history: tuple


def solve_game(
    game: StochasticGame,
    tol: float = DEFAULT_TOLERANCE,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> SolveResult:
    """Compute the value vector and optimal stationary strategies of ``game``.

    Iterates from the zero vector until the sup-norm step drops below
    ``tol``; raises :class:`ConvergenceError` carrying the last iterate if
    ``max_iters`` is hit first (with a sensible tolerance that cannot happen,
    the iteration is a contraction).
    """
    if not tol > 0:
        raise ValidationError(f"tolerance must be positive, got {tol}")
    if max_iters < 1:
        raise ValidationError(f"max_iters must be at least 1, got {max_iters}")

    p = game.size
    v = np.zeros(p)
    history = []
    residual = np.inf
    converged = False
    iterations = 0
    for iterations in range(1, max_iters + 1):
        new = np.empty(p)
        for k, element in enumerate(game.elements):
            B = element.payoff + element.transitions @ v
            new[k] = solve_matrix_game(B).value
        residual = float(np.abs(new - v).max())
        history.append(residual)
        v = new
        log.debug("iteration %d: residual %.3e", iterations, residual)
        if residual < tol:
            converged = True
            break
    if not converged:
        raise ConvergenceError(
            f"no convergence to {tol:g} within {max_iters} iterations "
            f"(residual {residual:.3g})",
            values=v, iterations=iterations, residual=residual,
        )

    attacker = []
    defender = []
    for element in game.elements:
        solution = solve_matrix_game(element.payoff + element.transitions @ v)
        attacker.append(solution.row_strategy)
        defender.append(solution.col_strategy)
    v.flags.writeable = False
    return SolveResult(
        values=v,
        attacker_strategies=tuple(attacker),
        defender_strategies=tuple(defender),
        iterations=iterations,
        residual=residual,
        residual_history=tuple(history),
    )


def _check_profile(game, strategies, attacker):
    side = "attacker" if attacker else "defender"
    if len(strategies) != game.size:
        raise ValidationError(
            f"{side} profile has {len(strategies)} states, game has {game.size}"
        )
    cleaned = []
    for k, (element, probs) in enumerate(zip(game.elements, strategies)):
        probs = np.asarray(probs, dtype=float)
        count = len(element.actions.attacker if attacker else element.actions.defender)
        if probs.shape != (count,):
            raise ValidationError(
                f"{side} strategy at state {k} has {probs.size} entries, expected {count}"
            )
        if (probs < -1e-12).any() or abs(probs.sum() - 1.0) > 1e-6:
            raise ValidationError(
                f"{side} strategy at state {k} is not a probability vector"
            )
        cleaned.append(np.maximum(probs, 0.0))
    return cleaned


def evaluate_strategies(game: StochasticGame, attacker_strategies, defender_strategies) -> np.ndarray:
    """Expected total payoff per starting state under fixed stationary play.

    Averages payoffs and transitions under the given mixed strategies and
    solves the resulting linear fixed-point system exactly. The positive
    end probability of every action pair keeps the averaged transition
    operator a strict contraction, so the system is uniquely solvable.
    """
    ys = _check_profile(game, attacker_strategies, attacker=True)
    zs = _check_profile(game, defender_strategies, attacker=False)
    p = game.size
    rewards = np.empty(p)
    Q = np.empty((p, p))
    for k, element in enumerate(game.elements):
        rewards[k] = ys[k] @ element.payoff @ zs[k]
        Q[k] = np.einsum("i,ijl,j->l", ys[k], element.transitions, zs[k])
    return np.linalg.solve(np.eye(p) - Q, rewards)
