"""Monte Carlo play-out of the stochastic game under fixed stationary play.

Estimates the expected total attacker payoff per starting state by sampling
complete episodes, as an independent check on the solver. Each step samples
both players' actions from their mixed strategies and then the next state
(or end of game) from the transition row of that action pair. The payoff
accrual is tied to the same draw: an attack accrues the target's attack
value exactly when the transition sample lands on the attack's success
state, so per step the expected accrual equals the matrix payoff entry.

Episodes are advanced in lockstep, vectorised across the whole batch. Every
episode consumes a fixed column of the random stream (three uniforms per
step, drawn for all episodes whether still running or not), so an episode's
trajectory depends only on the seed and its own index, never on how the
rest of the batch evolves. Per starting state the generator is derived by
spawning the master seed, making state reports independent of which other
starting states are simulated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .builder import StochasticGame
from .errors import ValidationError
from .solver import _check_profile

#: an episode running longer than this aborts the simulation
STEP_CAP = 1_000_000


@dataclass(frozen=True)
class StateEstimate:
    """Monte Carlo estimate of one starting state's expected total payoff."""

    state_index: int
    episodes: int
    mean_payoff: float
    std_error: float
    mean_episode_length: float


@dataclass(frozen=True)
class SimulationReport:
    """Per-starting-state estimates plus the master seed that produced them."""

    seed: int
    episodes: int
    per_state: tuple

    def estimate(self, state_index: int) -> StateEstimate:
        for entry in self.per_state:
            if entry.state_index == state_index:
                return entry
        raise KeyError(f"no estimate for state index {state_index}")


def _state_tables(game, ys, zs):
    """Precompute per-state sampling tables: action cdfs, outcome cdfs, accruals."""
    p = game.size
    tables = []
    for k, element in enumerate(game.elements):
        # clip before pinning the last edge so rounding overshoot past 1.0
        # cannot leave a locally decreasing cdf (searchsorted needs sorted input)
        attacker_cdf = np.minimum(np.cumsum(ys[k]), 1.0)
        defender_cdf = np.minimum(np.cumsum(zs[k]), 1.0)
        attacker_cdf[-1] = defender_cdf[-1] = 1.0
        outcome = np.concatenate(
            [element.transitions, element.end_prob[:, :, None]], axis=2
        )
        outcome_cdf = np.minimum(np.cumsum(outcome, axis=2), 1.0)
        outcome_cdf[:, :, -1] = 1.0  # row mass is 1 to 1e-12; pin the last edge
        state = game.space.states[k]
        red = game.space.reductions[k]
        succ = np.full(len(element.actions.attacker), -1, dtype=np.int64)
        value = np.zeros(len(element.actions.attacker))
        for ai, act in enumerate(element.actions.attacker):
            if act is not None and not state.is_compromised(act):
                succ[ai] = state.mask | state.bit(act)
                value[ai] = red.attack_values[red.position(act)]
        tables.append((attacker_cdf, defender_cdf, outcome_cdf, succ, value))
    return tables


def _run_batch(tables, start, episodes, rng, max_steps, p):
    state = np.full(episodes, start, dtype=np.int64)
    alive = np.ones(episodes, dtype=bool)
    payoff = np.zeros(episodes)
    length = np.zeros(episodes, dtype=np.int64)
    end_index = p
    steps = 0
    while alive.any():
        if steps >= max_steps:
            raise RuntimeError(
                f"an episode exceeded the {max_steps}-step cap; "
                "end probabilities this small are outside the model's guarantees"
            )
        u_att, u_def, u_out = rng.random((3, episodes))
        running = np.nonzero(alive)[0]
        current = state[running]  # snapshot: all transitions of a step apply at once
        for k in np.unique(current):
            sel = running[current == k]
            attacker_cdf, defender_cdf, outcome_cdf, succ, value = tables[k]
            i = np.searchsorted(attacker_cdf, u_att[sel], side="right")
            j = np.searchsorted(defender_cdf, u_def[sel], side="right")
            rows = outcome_cdf[i, j]
            nxt = (rows <= u_out[sel, None]).sum(axis=1)
            payoff[sel] += np.where(nxt == succ[i], value[i], 0.0)
            length[sel] += 1
            ended = nxt == end_index
            alive[sel[ended]] = False
            state[sel[~ended]] = nxt[~ended]
        steps += 1
    return payoff, length


def simulate(
    game: StochasticGame,
    attacker_strategies,
    defender_strategies,
    episodes: int,
    seed: int,
    start_states=None,
    max_steps: int = STEP_CAP,
) -> SimulationReport:
    """Estimate expected total payoffs by seeded Monte Carlo play-out.

    ``start_states`` is an iterable of state indices (default: every state).
    Identical inputs and seed give an identical report, and each state's
    entry does not depend on which other states are simulated.
    """
    if episodes < 1:
        raise ValidationError(f"episodes must be at least 1, got {episodes}")
    ys = _check_profile(game, attacker_strategies, attacker=True)
    zs = _check_profile(game, defender_strategies, attacker=False)
    p = game.size
    if start_states is None:
        start_states = range(p)
    starts = [int(k) for k in start_states]
    for k in starts:
        if not 0 <= k < p:
            raise ValidationError(f"start state index {k} out of range")

    tables = _state_tables(game, ys, zs)
    children = np.random.SeedSequence(seed).spawn(p)
    entries = []
    for k in starts:
        rng = np.random.default_rng(children[k])
        payoff, length = _run_batch(tables, k, episodes, rng, max_steps, p)
        spread = float(payoff.std(ddof=1)) if episodes > 1 else 0.0
        entries.append(StateEstimate(
            state_index=k,
            episodes=episodes,
            mean_payoff=float(payoff.mean()),
            std_error=spread / float(np.sqrt(episodes)),
            mean_episode_length=float(length.mean()),
        ))
    return SimulationReport(seed=seed, episodes=episodes, per_state=tuple(entries))
