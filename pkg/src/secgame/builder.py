"""Construction of the stochastic game from a state space.

Each system state becomes one game element: a payoff matrix over the two
players' pure actions together with a transition lottery over game elements
and an explicit end-of-game probability. The attacker's actions are attacks
on individual nodes plus doing nothing; the defender symmetrically defends a
node or does nothing. An attack on an alive node succeeds with the
state-dependent compromise probability and pays the attacker the node's
attack value; on failure the network is restored, stays put, or the game
ends according to the state's restart parameters. Doing nothing pays zero
and draws from the no-attack restart lottery.

In the default ``reduced`` action mode each player has one action per alive
node plus doing nothing. The ``full`` mode keeps all n + 1 actions in every
state; attacks on already-compromised nodes are failed attacks (success
probability zero), which leaves the game value unchanged whenever the
attack and no-attack restart parameters agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .network import success_probability
from .statespace import StateSpace, successor

#: action-set construction modes
ACTION_MODES = ("reduced", "full")

#: transition mass of every action pair must hit 1 this exactly
MASS_ATOL = 1e-12


@dataclass(frozen=True)
class ActionSet:
    """Pure actions of both players at one state; ``None`` means do nothing."""

    attacker: tuple
    defender: tuple


@dataclass(frozen=True)
class GameElement:
    """One state's payoff matrix, transition tensor, and end probabilities.

    ``payoff`` is (m, n) for m attacker and n defender actions,
    ``transitions`` is (m, n, p) over the p states, and ``end_prob`` (m, n)
    completes every row to total probability one. Every action pair keeps a
    strictly positive end probability, which is what guarantees finite play.
    """

    state_index: int
    actions: ActionSet
    payoff: np.ndarray
    transitions: np.ndarray
    end_prob: np.ndarray

    def __post_init__(self):
        m, n = self.payoff.shape
        if self.transitions.shape[:2] != (m, n) or self.end_prob.shape != (m, n):
            raise ValidationError(
                f"element {self.state_index}: inconsistent matrix shapes"
            )
        if (self.payoff < 0).any():
            raise ValidationError(f"element {self.state_index}: negative payoff entry")
        if (self.transitions < 0).any() or (self.end_prob < 0).any():
            raise ValidationError(f"element {self.state_index}: negative probability")
        mass = self.transitions.sum(axis=2) + self.end_prob
        if np.abs(mass - 1.0).max() > MASS_ATOL:
            raise ValidationError(
                f"element {self.state_index}: transition mass off by "
                f"{np.abs(mass - 1.0).max():.3g}"
            )
        if (self.end_prob <= 0).any():
            raise ValidationError(
                f"element {self.state_index}: end probability must stay positive"
            )


@dataclass(frozen=True)
class StochasticGame:
    """All game elements of a network security game plus their state space."""

    space: StateSpace
    elements: tuple
    action_mode: str

    @property
    def size(self) -> int:
        return len(self.elements)

    def contraction_factor(self) -> float:
        """Largest total continue probability over all states and action pairs."""
        return max(e.transitions.sum(axis=2).max() for e in self.elements)

    def min_end_probability(self) -> float:
        return min(e.end_prob.min() for e in self.elements)


def _frozen(arr):
    arr.flags.writeable = False
    return arr


def build_game(space: StateSpace, action_mode: str = "reduced") -> StochasticGame:
    """Build every game element of the stochastic game over ``space``.

    Construction is deterministic and per-state independent. See the module
    docstring for the payoff and transition rules.
    """
    if action_mode not in ACTION_MODES:
        raise ValidationError(f"unknown action mode {action_mode!r}")
    p = space.size
    elements = []
    for k, state in enumerate(space.states):
        red = space.reductions[k]
        params = space.restart[k]
        if action_mode == "reduced":
            targets = red.alive
        else:
            targets = tuple(range(space.node_count))
        actions = targets + (None,)
        m = len(actions)

        payoff = np.zeros((m, m))
        transitions = np.zeros((m, m, p))
        end = np.zeros((m, m))
        for ai, act in enumerate(actions):
            attacks_alive = act is not None and not state.is_compromised(act)
            if attacks_alive:
                ps = np.full(m, success_probability(red, act, defended=False))
                for dj, defend in enumerate(actions):
                    if defend == act:
                        ps[dj] = success_probability(red, act, defended=True)
                payoff[ai] = ps * red.attack_values[red.position(act)]
                transitions[ai, range(m), successor(state, act).mask] = ps
                p_r, p_e = params.p_r, params.p_e
            else:
                # do nothing, or (full mode) a guaranteed-to-fail attack on a
                # compromised node; the defender's choice changes nothing
                ps = np.zeros(m)
                if act is None:
                    p_r, p_e = params.p_nothing_r, params.p_nothing_e
                else:
                    p_r, p_e = params.p_r, params.p_e
            fail = 1.0 - ps
            if k == 0:
                # restoring and staying put both land on the all-healthy state
                transitions[ai, :, 0] += fail * (1.0 - p_e)
            else:
                transitions[ai, :, 0] += fail * p_r
                transitions[ai, :, k] += fail * (1.0 - p_r - p_e)
            end[ai] = fail * p_e

        elements.append(GameElement(
            state_index=k,
            actions=ActionSet(attacker=actions, defender=actions),
            payoff=_frozen(payoff),
            transitions=_frozen(transitions),
            end_prob=_frozen(end),
        ))
    return StochasticGame(space=space, elements=tuple(elements), action_mode=action_mode)


def expand_strategy(element: GameElement, probs, node_count: int, attacker: bool = True) -> np.ndarray:
    """Lay a per-element strategy out over all n + 1 action slots.

    Returns a length ``node_count + 1`` vector (one slot per node, then do
    nothing) with zeros for actions absent from the element, which is how
    strategy tables are displayed regardless of action mode.
    """
    actions = element.actions.attacker if attacker else element.actions.defender
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (len(actions),):
        raise ValidationError(
            f"element {element.state_index}: strategy has {probs.shape[0]} entries, "
            f"expected {len(actions)}"
        )
    out = np.zeros(node_count + 1)
    for action, prob in zip(actions, probs):
        out[node_count if action is None else action] += prob
    return out
