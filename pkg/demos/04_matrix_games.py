"""
Zero-sum matrix games
======================

The inner engine of the solver: exact values and optimal mixed strategies of
two-player zero-sum matrix games. The row player maximises, the column
player minimises, and the returned strategies carry the minimax guarantee.
"""

import numpy as np

from secgame import solve_matrix_game

np.set_printoptions(precision=4, suppress=True)

# a classic coordination trap: mixing 50/50 is the only safe play
B = np.array([[3.0, 1.0],
              [1.0, 3.0]])
solution = solve_matrix_game(B)
print("game:\n", B)
print("value:", solution.value)
print("row strategy:", solution.row_strategy)
print("col strategy:", solution.col_strategy)

# the guarantee: the row mix secures the value against every column,
# the column mix concedes at most the value against every row
print("secured: ", solution.row_strategy @ B)
print("conceded:", B @ solution.col_strategy)

# games with a saddle point need no mixing at all
saddle = solve_matrix_game([[1.0, 0.0],
                            [2.0, 1.0]])
print("\nsaddle-point game value:", saddle.value)
print("row strategy:", saddle.row_strategy)

# shifting every payoff shifts the value; scaling scales it
rng = np.random.default_rng(8)
G = rng.uniform(-5, 5, (4, 6))
base = solve_matrix_game(G).value
print("\nval(G)        =", base)
print("val(G + 10)   =", solve_matrix_game(G + 10).value)
print("val(3 G)      =", solve_matrix_game(3 * G).value)

# asymmetric games are fine; a 1 x n game is just the column player's pick
print("\n1 x 3 game value:", solve_matrix_game([[3.0, -1.0, 2.0]]).value)
