from pathlib import Path

import pytest

from secgame import build_game, example_config_path, load_config, solve_game


@pytest.fixture(scope="session")
def datadir():
    return Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def example_config():
    return load_config(example_config_path())


@pytest.fixture(scope="session")
def example_space(example_config):
    return example_config.state_space()


@pytest.fixture(scope="session")
def example_game(example_space):
    return build_game(example_space, "reduced")


@pytest.fixture(scope="session")
def example_game_full(example_space):
    return build_game(example_space, "full")


@pytest.fixture(scope="session")
def loose_solution(example_game):
    """The bundled game solved at the default 1e-4 tolerance."""
    return solve_game(example_game, tol=1e-4)


@pytest.fixture(scope="session")
def tight_solution(example_game):
    """The bundled game solved near machine precision."""
    return solve_game(example_game, tol=1e-9)
