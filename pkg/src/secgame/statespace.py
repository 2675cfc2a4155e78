"""Enumeration of the 2**n system states with cached per-state reductions.

States are ordered by the integer value of their bit mask with node 0 as the
most significant bit: the all-healthy state gets index 0 and the
all-compromised state index 2**n - 1. Because every mask occurs exactly
once, a state's index simply equals its mask, which keeps lookups trivial.
Human-facing labels elsewhere use 1-based indices on top of this ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, ValidationError
from .network import InfluenceNetwork, NetworkState, reduce_network

#: enumerating beyond this many nodes is refused (2**16 states)
DEFAULT_NODE_CAP = 16


@dataclass(frozen=True)
class RestartParams:
    """Per-state restart and termination probabilities.

    ``p_r``/``p_e`` apply after a failed attack, ``p_nothing_r``/
    ``p_nothing_e`` when the attacker does nothing: the probability that the
    network is restored to the all-healthy state, and that the game ends.
    All four lie in (0, 1); each pair must sum to at most 1, with equality
    allowed only at the all-healthy state (where restoring and staying put
    coincide anyway).
    """

    p_r: float
    p_e: float
    p_nothing_r: float
    p_nothing_e: float

    def check(self, initial: bool) -> list:
        problems = []
        for name in ("p_r", "p_e", "p_nothing_r", "p_nothing_e"):
            value = getattr(self, name)
            if not 0 < value < 1:
                problems.append(f"{name} must lie in (0, 1), got {value:.9g}")
        for r_name, e_name in (("p_r", "p_e"), ("p_nothing_r", "p_nothing_e")):
            total = getattr(self, r_name) + getattr(self, e_name)
            if total > 1:
                problems.append(f"{r_name} + {e_name} = {total:.9g} exceeds 1")
            elif total == 1 and not initial:
                problems.append(
                    f"{r_name} + {e_name} = 1 is only allowed at the all-healthy state"
                )
        return problems


#: restart parameters used when a configuration does not override them
DEFAULT_RESTART = RestartParams(p_r=0.2, p_e=0.3, p_nothing_r=0.2, p_nothing_e=0.3)
#: default restart parameters of the all-healthy state
DEFAULT_INITIAL_RESTART = RestartParams(p_r=0.7, p_e=0.3, p_nothing_r=0.7, p_nothing_e=0.3)


@dataclass(frozen=True)
class StateSpace:
    """All 2**n states of a network with their reductions and restart parameters."""

    network: InfluenceNetwork
    states: tuple
    reductions: tuple
    restart: tuple

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def node_count(self) -> int:
        return self.network.node_count

    def index_of(self, state: NetworkState) -> int:
        if state.node_count != self.node_count:
            raise ValidationError(
                f"state is over {state.node_count} nodes, space has {self.node_count}"
            )
        return state.mask


def successor(state: NetworkState, node: int) -> NetworkState:
    """The state reached when one more node is compromised."""
    if state.is_compromised(node):
        raise ValidationError(f"node {node + 1} is already compromised in state {state}")
    return NetworkState(state.node_count, state.mask | state.bit(node))


def enumerate_states(
    net: InfluenceNetwork,
    defaults: RestartParams = DEFAULT_RESTART,
    initial: RestartParams = DEFAULT_INITIAL_RESTART,
    overrides=None,
    max_nodes: int = DEFAULT_NODE_CAP,
) -> StateSpace:
    """Enumerate all 2**n states and cache a :class:`ReducedNetwork` per state.

    ``defaults`` applies to every state except the all-healthy one, which
    takes ``initial``; ``overrides`` may remap individual states (keyed by
    mask or :class:`NetworkState`) and wins over both. Refuses networks with
    more than ``max_nodes`` nodes rather than silently building an enormous
    state space.
    """
    n = net.node_count
    if n > max_nodes:
        raise CapacityError(
            f"{n} nodes means 2**{n} states, over the cap of {max_nodes} nodes"
        )
    by_mask = {}
    for key, params in (overrides or {}).items():
        mask = key.mask if isinstance(key, NetworkState) else int(key)
        if not 0 <= mask < (1 << n):
            raise ValidationError(f"restart override mask {mask} out of range")
        by_mask[mask] = params

    states = []
    reductions = []
    restart = []
    problems = []
    for mask in range(1 << n):
        state = NetworkState(n, mask)
        params = by_mask.get(mask, initial if mask == 0 else defaults)
        for problem in params.check(initial=mask == 0):
            problems.append(f"state {state}: {problem}")
        states.append(state)
        reductions.append(reduce_network(net, state))
        restart.append(params)
    if problems:
        raise ValidationError("invalid restart parameters: " + "; ".join(problems), problems)
    return StateSpace(
        network=net,
        states=tuple(states),
        reductions=tuple(reductions),
        restart=tuple(restart),
    )
