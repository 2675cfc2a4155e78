"""
Solving the attacker/defender game
===================================

Every subset of compromised nodes is a system state, and at each state the
attacker picks a node to hit (or sits out) while the defender picks a node
to watch. A successful attack pays the attacker the target's attack value
and moves the system one state deeper; a failed one is either shrugged off,
rolled back by a full restore, or ends the game. Value iteration over the
per-state matrix games finds the game value and optimal mixed strategies.
"""

import numpy as np

from secgame import (
    build_game,
    example_config_path,
    expand_strategy,
    load_config,
    solve_game,
    solve_matrix_game,
)

np.set_printoptions(precision=4, suppress=True)

config = load_config(example_config_path())
game = config.build_game()

print(f"{game.size} states, "
      f"max continue probability {game.contraction_factor():.4f} (< 1, so the "
      f"iteration contracts)")

result = solve_game(game, tol=1e-4)
print(f"\nconverged in {result.iterations} iterations, residual {result.residual:.2e}")
print("value vector:", result.values)

n = game.space.node_count
print("\nstate        attacker mix (nodes 1..3, nothing)   defender mix")
for k, state in enumerate(game.space.states):
    attacker = expand_strategy(game.elements[k], result.attacker_strategies[k], n)
    defender = expand_strategy(game.elements[k], result.defender_strategies[k], n,
                               attacker=False)
    print(f"{k + 1} {state}   {attacker}   {defender}")

# At the healthy state the attacker splits between the two most valuable
# targets and the defender concentrates on the big one; nobody ever sits out
# while there is something left to take.

# The solution is a fixed point: replaying each state's matrix game against
# the solved continuation values returns the same value vector.
replay = np.array([
    solve_matrix_game(el.payoff + el.transitions @ result.values).value
    for el in game.elements
])
print("\nfixed-point residual:", np.abs(replay - result.values).max())

# The all-compromised state leaves nothing to attack; its value is purely the
# restart lottery discounting the healthy state's value.
params = game.space.restart[-1]
factor = params.p_nothing_r / (params.p_nothing_r + params.p_nothing_e)
print("restart discount at the bottom state:", factor,
      "and indeed v_8 / v_1 =", result.values[7] / result.values[0])

# A full-action variant keeps all four actions everywhere (attacks on dead
# nodes just fail); the value vector is unchanged.
full = solve_game(build_game(game.space, "full"), tol=1e-4)
print("\nfull-action value vector agrees:",
      np.abs(full.values - result.values).max() < 1e-3)
