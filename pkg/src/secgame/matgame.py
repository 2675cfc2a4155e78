"""Exact zero-sum matrix game solving via minimax linear programming.

The row player maximises, the column player minimises. A pure saddle point
is returned directly when one exists; otherwise the game is shifted to make
all entries positive and solved in the standard reciprocal normalisation

    min 1'u  s.t.  B'u >= 1, u >= 0,

whose optimum gives val(B) = 1 / sum(u) (minus the shift) and the row
strategy y = u / sum(u); the column strategy comes out of the dual
multipliers of the same program. The LP itself is delegated to scipy's
HiGHS backend, which is deterministic for identical input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import ValidationError

#: solutions are rejected if either guarantee misses the value by more than this
GUARANTEE_ATOL = 1e-6


@dataclass(frozen=True)
class MatrixGameSolution:
    """Value and one pair of optimal mixed strategies of a matrix game.

    The strategies carry the usual guarantee: the row strategy secures at
    least ``value`` against every column, the column strategy concedes at
    most ``value`` against every row (up to LP tolerance). Optimal strategies
    need not be unique; only the guarantee is promised.
    """

    value: float
    row_strategy: np.ndarray
    col_strategy: np.ndarray


def _pure_saddle(B):
    row_mins = B.min(axis=1)
    col_maxs = B.max(axis=0)
    i = int(np.argmax(row_mins))
    j = int(np.argmin(col_maxs))
    if row_mins[i] == col_maxs[j]:
        return i, j
    return None


def _lp_strategies(B):
    # positivity shift keeps the reciprocal normalisation well defined
    shift = max(0.0, 1.0 - float(B.min()))
    shifted = B + shift
    m, n = shifted.shape
    res = linprog(
        np.ones(m),
        A_ub=-shifted.T,
        b_ub=-np.ones(n),
        bounds=(0, None),
        method="highs",
    )
    if res.status != 0:
        raise RuntimeError(f"matrix game LP failed: {res.message}")
    u = np.maximum(res.x, 0.0)
    value = 1.0 / u.sum() - shift
    row = u / u.sum()
    # the dual multipliers of B'u >= 1 are the column player's unnormalised mix
    w = np.maximum(-res.ineqlin.marginals, 0.0)
    col = w / w.sum()
    return value, row, col


def solve_matrix_game(B) -> MatrixGameSolution:
    """Solve the zero-sum matrix game ``B`` exactly.

    Raises :class:`ValidationError` on empty or non-finite input. Output is
    deterministic for identical input; when the optimum is degenerate one
    optimal strategy pair is returned.
    """
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[0] < 1 or B.shape[1] < 1:
        raise ValidationError(f"payoff matrix must be 2-d and nonempty, got shape {B.shape}")
    if not np.isfinite(B).all():
        raise ValidationError("payoff matrix contains non-finite entries")

    m, n = B.shape
    saddle = _pure_saddle(B)
    if saddle is not None:
        i, j = saddle
        value = float(B[i, j])
        row = np.zeros(m)
        col = np.zeros(n)
        row[i] = 1.0
        col[j] = 1.0
    else:
        value, row, col = _lp_strategies(B)

    low = row @ B
    high = B @ col
    if low.min() < value - GUARANTEE_ATOL or high.max() > value + GUARANTEE_ATOL:
        raise RuntimeError(
            f"matrix game solution failed its guarantee check "
            f"(value {value:.9g}, secured {low.min():.9g}, conceded {high.max():.9g})"
        )
    row.flags.writeable = False
    col.flags.writeable = False
    return MatrixGameSolution(value=float(value), row_strategy=row, col_strategy=col)
