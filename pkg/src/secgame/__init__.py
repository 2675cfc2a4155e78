"""Zero-sum stochastic security games on linear influence networks.

A library for modelling a network of correlated security assets and
vulnerabilities, building the attacker/defender stochastic game over its
2**n compromise states, solving for the value vector and optimal stationary
mixed strategies by value iteration over matrix games, and validating the
solution by seeded Monte Carlo play-out.
"""

from .builder import (
    ActionSet,
    GameElement,
    StochasticGame,
    build_game,
    expand_strategy,
)
from .config import (
    GameConfig,
    SolverOptions,
    example_config_path,
    load_config,
    load_config_dict,
)
from .errors import (
    CapacityError,
    ConvergenceError,
    ParseError,
    ValidationError,
)
from .matgame import MatrixGameSolution, solve_matrix_game
from .network import (
    InfluenceNetwork,
    NetworkState,
    ReducedNetwork,
    effective_assets,
    reduce_network,
    success_probability,
)
from .simulate import SimulationReport, StateEstimate, simulate
from .solver import SolveResult, evaluate_strategies, solve_game
from .statespace import (
    DEFAULT_INITIAL_RESTART,
    DEFAULT_RESTART,
    RestartParams,
    StateSpace,
    enumerate_states,
    successor,
)

__version__ = "0.1.0"

__all__ = [
    "ActionSet",
    "CapacityError",
    "ConvergenceError",
    "DEFAULT_INITIAL_RESTART",
    "DEFAULT_RESTART",
    "GameConfig",
    "GameElement",
    "InfluenceNetwork",
    "MatrixGameSolution",
    "NetworkState",
    "ParseError",
    "ReducedNetwork",
    "RestartParams",
    "SimulationReport",
    "SolveResult",
    "SolverOptions",
    "StateEstimate",
    "StateSpace",
    "StochasticGame",
    "ValidationError",
    "build_game",
    "effective_assets",
    "enumerate_states",
    "evaluate_strategies",
    "example_config_path",
    "expand_strategy",
    "load_config",
    "load_config_dict",
    "reduce_network",
    "simulate",
    "solve_game",
    "solve_matrix_game",
    "success_probability",
    "successor",
]
