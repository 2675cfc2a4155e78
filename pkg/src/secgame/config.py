"""Configuration documents describing a network security game.

A configuration is a JSON document with a top-level ``schema`` marker:

* ``nodes``: list of ``{name, independent_asset, probs}`` where ``probs`` is
  the quadruple ``[p_d1, p_n1, p_d0, p_n0]``.
* ``influence_edges``: list of ``{from, to, weight}``; self-influence is not
  listed, the diagonal is inferred per node as one minus the column sum.
* ``support_edges``: list of ``{from, to, weight}``; self-support is allowed.
* ``restart`` (optional): ``defaults`` for all states, ``initial`` overrides
  for the all-healthy state, and ``overrides`` keyed by bit pattern (node 1
  leftmost, e.g. ``"110"``). Partial objects are merged over the built-in
  defaults.
* ``solver`` (optional): ``tolerance``, ``max_iters``, ``action_mode``
  (``reduced`` or ``full``).

Structural problems raise :class:`ParseError` with the offending path;
semantic problems are collected in full and raised as one
:class:`ValidationError`, so a validation run can report every violation.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .builder import ACTION_MODES, StochasticGame, build_game
from .errors import ParseError, ValidationError
from .network import PROB_NAMES, InfluenceNetwork
from .statespace import (
    DEFAULT_INITIAL_RESTART,
    DEFAULT_RESTART,
    RestartParams,
    StateSpace,
    enumerate_states,
)

CONFIG_SCHEMA = "secgame.config/1"

_RESTART_KEYS = ("p_r", "p_e", "p_nothing_r", "p_nothing_e")


@dataclass(frozen=True)
class SolverOptions:
    tolerance: float = 1e-4
    max_iters: int = 10_000
    action_mode: str = "reduced"


@dataclass
class RawConfig:
    """Structurally parsed configuration, before semantic validation.

    Numeric tables are filled in even when constraints are violated, so a
    validation command can still print the derived quantities it checks.
    """

    source: str
    names: tuple
    assets: np.ndarray
    probs: np.ndarray
    influence: np.ndarray
    support: np.ndarray
    restart_defaults: RestartParams
    restart_initial: RestartParams
    restart_overrides: dict
    solver: SolverOptions


@dataclass(frozen=True)
class GameConfig:
    """Validated configuration ready to enumerate states and build the game."""

    network: InfluenceNetwork
    node_names: tuple
    restart_defaults: RestartParams
    restart_initial: RestartParams
    restart_overrides: dict
    solver: SolverOptions

    def state_space(self, max_nodes: int = 16) -> StateSpace:
        return enumerate_states(
            self.network,
            defaults=self.restart_defaults,
            initial=self.restart_initial,
            overrides=self.restart_overrides,
            max_nodes=max_nodes,
        )

    def build_game(self, max_nodes: int = 16) -> StochasticGame:
        return build_game(self.state_space(max_nodes), self.solver.action_mode)


def example_config_path() -> Path:
    """Path of the bundled three-node example configuration."""
    return Path(resources.files("secgame").joinpath("data/example-3node.json"))


def _require(data, key, kind, path):
    if key not in data:
        raise ParseError(f"{path}: missing required field {key!r}")
    value = data[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"{path}.{key}: expected a number, got {type(value).__name__}")
        return float(value)
    if isinstance(value, bool) or not isinstance(value, kind):
        raise ParseError(f"{path}.{key}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def _parse_restart(data, base, path):
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected an object")
    unknown = set(data) - set(_RESTART_KEYS)
    if unknown:
        raise ParseError(f"{path}: unknown field {sorted(unknown)[0]!r}")
    merged = {key: getattr(base, key) for key in _RESTART_KEYS}
    for key in data:
        merged[key] = _require(data, key, float, path)
    return RestartParams(**merged)


def parse_config(data, source="<config>") -> RawConfig:
    """Structurally parse a configuration dictionary (no semantic checks)."""
    if not isinstance(data, dict):
        raise ParseError(f"{source}: configuration must be a JSON object")
    schema = data.get("schema")
    if schema != CONFIG_SCHEMA:
        raise ParseError(f"{source}: schema must be {CONFIG_SCHEMA!r}, got {schema!r}")
    known = {"schema", "nodes", "influence_edges", "support_edges", "restart", "solver"}
    for key in data:
        if key not in known:
            raise ParseError(f"{source}: unknown top-level field {key!r}")

    nodes = _require(data, "nodes", list, source)
    if not nodes:
        raise ParseError(f"{source}.nodes: at least one node is required")
    names = []
    assets = []
    probs = []
    for i, node in enumerate(nodes):
        path = f"nodes[{i}]"
        if not isinstance(node, dict):
            raise ParseError(f"{path}: expected an object")
        name = _require(node, "name", str, path)
        if name in names:
            raise ParseError(f"{path}.name: duplicate node name {name!r}")
        names.append(name)
        assets.append(_require(node, "independent_asset", float, path))
        quad = _require(node, "probs", list, path)
        if len(quad) != 4:
            raise ParseError(f"{path}.probs: expected 4 entries [p_d1, p_n1, p_d0, p_n0]")
        for q, value in enumerate(quad):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParseError(f"{path}.probs[{q}]: expected a number")
        probs.append([float(v) for v in quad])
    n = len(names)
    index = {name: i for i, name in enumerate(names)}

    def edge_matrix(field, allow_self):
        matrix = np.zeros((n, n))
        seen = set()
        for i, edge in enumerate(data.get(field, [])):
            path = f"{field}[{i}]"
            if not isinstance(edge, dict):
                raise ParseError(f"{path}: expected an object")
            src = _require(edge, "from", str, path)
            dst = _require(edge, "to", str, path)
            for name in (src, dst):
                if name not in index:
                    raise ParseError(f"{path}: unknown node {name!r}")
            if not allow_self and src == dst:
                raise ParseError(f"{path}: self-influence is inferred, do not list it")
            if (src, dst) in seen:
                raise ParseError(f"{path}: duplicate edge {src!r} -> {dst!r}")
            seen.add((src, dst))
            matrix[index[src], index[dst]] = _require(edge, "weight", float, path)
        return matrix

    influence = edge_matrix("influence_edges", allow_self=False)
    # infer each node's self-influence so columns sum to one
    for j in range(n):
        influence[j, j] = 1.0 - influence[:, j].sum()
    support = edge_matrix("support_edges", allow_self=True)

    restart = data.get("restart", {})
    if not isinstance(restart, dict):
        raise ParseError(f"{source}.restart: expected an object")
    for key in restart:
        if key not in ("defaults", "initial", "overrides"):
            raise ParseError(f"{source}.restart: unknown field {key!r}")
    defaults = _parse_restart(restart.get("defaults", {}), DEFAULT_RESTART, "restart.defaults")
    initial_base = dataclasses.replace(
        DEFAULT_INITIAL_RESTART,
        **{key: getattr(defaults, key) for key in ("p_e", "p_nothing_e")},
    )
    initial = _parse_restart(restart.get("initial", {}), initial_base, "restart.initial")
    overrides = {}
    raw_overrides = restart.get("overrides", {})
    if not isinstance(raw_overrides, dict):
        raise ParseError(f"{source}.restart.overrides: expected an object")
    for pattern, entry in raw_overrides.items():
        path = f"restart.overrides[{pattern!r}]"
        if len(pattern) != n or any(c not in "01" for c in pattern):
            raise ParseError(f"{path}: key must be an n-bit pattern such as '010'")
        mask = int(pattern, 2)
        base = initial if mask == 0 else defaults
        overrides[mask] = _parse_restart(entry, base, path)

    solver_data = data.get("solver", {})
    if not isinstance(solver_data, dict):
        raise ParseError(f"{source}.solver: expected an object")
    for key in solver_data:
        if key not in ("tolerance", "max_iters", "action_mode"):
            raise ParseError(f"{source}.solver: unknown field {key!r}")
    solver = SolverOptions()
    if "tolerance" in solver_data:
        solver = dataclasses.replace(
            solver, tolerance=_require(solver_data, "tolerance", float, "solver"))
    if "max_iters" in solver_data:
        value = _require(solver_data, "max_iters", int, "solver")
        solver = dataclasses.replace(solver, max_iters=value)
    if "action_mode" in solver_data:
        mode = _require(solver_data, "action_mode", str, "solver")
        if mode not in ACTION_MODES:
            raise ParseError(f"solver.action_mode: must be one of {ACTION_MODES}, got {mode!r}")
        solver = dataclasses.replace(solver, action_mode=mode)

    return RawConfig(
        source=source,
        names=tuple(names),
        assets=np.array(assets),
        probs=np.array(probs),
        influence=influence,
        support=support,
        restart_defaults=defaults,
        restart_initial=initial,
        restart_overrides=overrides,
        solver=solver,
    )


def check_config(raw: RawConfig) -> list:
    """Collect every semantic violation of a parsed configuration."""
    problems = []
    n = len(raw.names)

    for j in range(n):
        offdiag = raw.influence[:, j].sum() - raw.influence[j, j]
        if offdiag > 1:
            problems.append(
                f"influence into node {raw.names[j]!r} sums to {offdiag:.9g}; "
                f"the inferred self-influence would be negative"
            )
    off = ~np.eye(n, dtype=bool)
    if (raw.influence[off] < 0).any() or (raw.influence[off] > 1).any():
        problems.append("influence edge weights must lie in (0, 1]")

    for i, asset in enumerate(raw.assets):
        if asset < 0:
            problems.append(f"nodes[{i}].independent_asset is negative ({asset:.9g})")

    if (raw.support < 0).any() or (raw.support > 1).any():
        problems.append("support edge weights must lie in [0, 1]")
    for j in range(n):
        total = raw.support[:, j].sum()
        if total > 1 + 1e-9:
            problems.append(
                f"support into node {raw.names[j]!r} sums to {total:.9g}, must be <= 1"
            )

    orderings = ((0, 1), (2, 3), (0, 2), (1, 3))
    for i in range(n):
        quad = raw.probs[i]
        if ((quad <= 0) | (quad >= 1)).any():
            problems.append(f"nodes[{i}].probs must lie strictly in (0, 1)")
            continue
        for lo, hi in orderings:
            if not quad[lo] < quad[hi]:
                problems.append(
                    f"nodes[{i}].probs: requires {PROB_NAMES[lo]} < {PROB_NAMES[hi]} "
                    f"(got {quad[lo]:.9g} >= {quad[hi]:.9g})"
                )

    for label, params, is_initial in (
        ("restart.defaults", raw.restart_defaults, False),
        ("restart.initial", raw.restart_initial, True),
    ):
        for problem in params.check(initial=is_initial):
            problems.append(f"{label}: {problem}")
    for mask, params in raw.restart_overrides.items():
        pattern = format(mask, f"0{n}b")
        for problem in params.check(initial=mask == 0):
            problems.append(f"restart.overrides[{pattern!r}]: {problem}")

    if not raw.solver.tolerance > 0:
        problems.append(f"solver.tolerance must be positive, got {raw.solver.tolerance:.9g}")
    if raw.solver.max_iters < 1:
        problems.append(f"solver.max_iters must be at least 1, got {raw.solver.max_iters}")
    return problems


def finalize_config(raw: RawConfig) -> GameConfig:
    """Build the validated :class:`GameConfig` from a checked raw configuration."""
    network = InfluenceNetwork(
        influence=raw.influence,
        independent_assets=raw.assets,
        support=raw.support,
        node_probs=raw.probs,
    )
    return GameConfig(
        network=network,
        node_names=raw.names,
        restart_defaults=raw.restart_defaults,
        restart_initial=raw.restart_initial,
        restart_overrides=dict(raw.restart_overrides),
        solver=raw.solver,
    )


def load_config_dict(data, source="<config>") -> GameConfig:
    raw = parse_config(data, source)
    problems = check_config(raw)
    if problems:
        raise ValidationError(
            f"{source}: " + "; ".join(problems), problems
        )
    return finalize_config(raw)


def load_config(path) -> GameConfig:
    """Load and fully validate a configuration file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return load_config_dict(data, source=str(path))
