"""Linear influence network model for security assets and vulnerabilities.

A network of n nodes is described by an influence matrix W, a vector s of
independent security assets, a support matrix H, and per-node compromise
probabilities. W is column stochastic: entry (i, j) is the share of node j's
independent asset held by node i, with the diagonal holding the share a node
keeps for itself. The effective security assets are the redistribution

    x = W s,

whose total always equals the total independent asset. H[i, j] is the
protection node i gives node j; the column sum h_j (in [0, 1]) is the
aggregate support of node j and lowers its probability of being compromised
through an affine interpolation between the zero-support and full-support
probabilities.

When nodes are compromised they are removed from the graph together with all
their edges. Each surviving node keeps only the share of its independent
asset not held by removed nodes, surviving influence columns are renormalised
back to column sums of one, and supports are recomputed over surviving
supporters only (supports are never renormalised). :func:`reduce_network`
computes all per-state derived quantities in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

#: column layout of the per-node compromise probability quadruple
PROB_NAMES = ("p_d1", "p_n1", "p_d0", "p_n0")

#: constraint checks are exact to this tolerance
ATOL = 1e-9
#: column sums further off than this are rejected instead of renormalised
RENORM_ATOL = 1e-6


def _frozen(values, dtype=float):
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class NetworkState:
    """Subset of compromised nodes, one of the 2**n system states.

    The bit for node i (0-based) is ``1 << (node_count - 1 - i)``: node 0 is
    the most significant bit, so the integer ``mask`` reproduces the usual
    state numbering where the all-healthy state is first and the
    all-compromised state is last.
    """

    node_count: int
    mask: int

    def __post_init__(self):
        if self.node_count < 1:
            raise ValidationError("a state needs at least one node")
        if not 0 <= self.mask < (1 << self.node_count):
            raise ValidationError(
                f"state mask {self.mask} out of range for {self.node_count} nodes"
            )

    @classmethod
    def healthy(cls, node_count: int) -> "NetworkState":
        return cls(node_count, 0)

    @classmethod
    def from_compromised(cls, node_count: int, nodes) -> "NetworkState":
        mask = 0
        for node in nodes:
            if not 0 <= node < node_count:
                raise ValidationError(f"node index {node} out of range")
            mask |= 1 << (node_count - 1 - node)
        return cls(node_count, mask)

    @classmethod
    def from_pattern(cls, pattern: str) -> "NetworkState":
        """Build a state from a bit string such as ``"010"`` (node 1 leftmost)."""
        if not pattern or any(c not in "01" for c in pattern):
            raise ValidationError(f"state pattern must be a nonempty 0/1 string, got {pattern!r}")
        return cls(len(pattern), int(pattern, 2))

    def bit(self, node: int) -> int:
        return 1 << (self.node_count - 1 - node)

    def is_compromised(self, node: int) -> bool:
        if not 0 <= node < self.node_count:
            raise ValidationError(f"node index {node} out of range")
        return bool(self.mask & self.bit(node))

    @property
    def compromised(self) -> tuple:
        return tuple(i for i in range(self.node_count) if self.mask & self.bit(i))

    @property
    def alive(self) -> tuple:
        return tuple(i for i in range(self.node_count) if not self.mask & self.bit(i))

    @property
    def pattern(self) -> tuple:
        return tuple(1 if self.mask & self.bit(i) else 0 for i in range(self.node_count))

    def __str__(self):
        return "(" + ",".join(str(b) for b in self.pattern) + ")"


@dataclass(frozen=True)
class InfluenceNetwork:
    """Static description of the network.

    Fields
    ------
    influence : (n, n) array
        Column-stochastic weights; entry (i, j) is the influence of node i on
        node j. Column sums within 1e-6 of one are silently renormalised,
        larger deviations are rejected with the offending column named.
    independent_assets : (n,) array
        Nonnegative intrinsic asset values.
    support : (n, n) array
        Entry (i, j) is the support node i gives node j, in [0, 1]; every
        column sum must stay in [0, 1].
    node_probs : (n, 4) array
        Per-node compromise probabilities, columns ordered
        ``(p_d1, p_n1, p_d0, p_n0)``: defended then undefended target, at
        full then zero support. All in (0, 1) with p_d1 < p_n1, p_d0 < p_n0,
        p_d1 < p_d0, p_n1 < p_n0.

    Instances are immutable (arrays are frozen) and safe to share across
    concurrent tasks.
    """

    influence: np.ndarray
    independent_assets: np.ndarray
    support: np.ndarray
    node_probs: np.ndarray

    def __post_init__(self):
        W = np.array(self.influence, dtype=float)
        s = np.array(self.independent_assets, dtype=float)
        H = np.array(self.support, dtype=float)
        P = np.array(self.node_probs, dtype=float)

        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ValidationError(f"influence matrix must be square, got shape {W.shape}")
        n = W.shape[0]
        if n < 1:
            raise ValidationError("network needs at least one node")
        if s.shape != (n,):
            raise ValidationError(f"independent_assets must have shape ({n},), got {s.shape}")
        if H.shape != (n, n):
            raise ValidationError(f"support matrix must have shape ({n}, {n}), got {H.shape}")
        if P.shape != (n, 4):
            raise ValidationError(f"node_probs must have shape ({n}, 4), got {P.shape}")

        problems = []
        if (W < -ATOL).any() or (W > 1 + ATOL).any():
            problems.append("influence weights must lie in [0, 1]")
        else:
            W = W.clip(0.0, 1.0)
            for j in range(n):
                colsum = W[:, j].sum()
                if abs(colsum - 1.0) > RENORM_ATOL:
                    problems.append(f"influence column {j + 1} sums to {colsum:.9g}, expected 1")
                elif colsum != 1.0:
                    W[:, j] /= colsum

        if (s < 0).any():
            bad = int(np.argmin(s))
            problems.append(f"independent asset of node {bad + 1} is negative ({s[bad]:.9g})")

        if (H < -ATOL).any() or (H > 1 + ATOL).any():
            problems.append("support weights must lie in [0, 1]")
        else:
            H = H.clip(0.0, 1.0)
            for j in range(n):
                colsum = H[:, j].sum()
                if colsum > 1 + ATOL:
                    problems.append(f"support into node {j + 1} sums to {colsum:.9g}, must be <= 1")

        if ((P <= 0) | (P >= 1)).any():
            problems.append("compromise probabilities must lie strictly in (0, 1)")
        else:
            orderings = ((0, 1), (2, 3), (0, 2), (1, 3))  # indices into PROB_NAMES
            for i in range(n):
                for lo, hi in orderings:
                    if not P[i, lo] < P[i, hi]:
                        problems.append(
                            f"node {i + 1}: requires {PROB_NAMES[lo]} < {PROB_NAMES[hi]}"
                            f" (got {P[i, lo]:.9g} >= {P[i, hi]:.9g})"
                        )

        if problems:
            raise ValidationError("invalid network: " + "; ".join(problems), problems)

        for name, arr in (("influence", W), ("independent_assets", s),
                          ("support", H), ("node_probs", P)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def node_count(self) -> int:
        return self.influence.shape[0]


@dataclass(frozen=True)
class ReducedNetwork:
    """Per-state derived quantities of the network with compromised nodes removed.

    Two asset vectors coexist because node removal changes the books in two
    ways. ``effective_assets`` runs the influence equation on the adjusted
    independent assets (each survivor keeps only the share of its asset not
    held by removed nodes), so their total equals the total adjusted asset.
    ``attack_values`` runs the same renormalised influence on the survivors'
    full independent assets; it prices what an attacker captures by
    compromising a node, and totals the survivors' full independent assets.
    At the all-healthy state the two coincide.

    All arrays are indexed by position in ``alive`` (ascending node order);
    ``node_probs`` carries the survivors' compromise probability rows.
    """

    state: NetworkState
    alive: tuple
    adjusted_assets: np.ndarray
    renormalized_influence: np.ndarray
    effective_assets: np.ndarray
    supports: np.ndarray
    attack_values: np.ndarray
    node_probs: np.ndarray

    def position(self, node: int) -> int:
        """Index of an alive node within the reduced arrays."""
        try:
            return self.alive.index(node)
        except ValueError:
            raise ValidationError(f"node {node + 1} is compromised in state {self.state}") from None


def effective_assets(net: InfluenceNetwork) -> np.ndarray:
    """Redistribute independent assets through the influence matrix (x = W s)."""
    return net.influence @ net.independent_assets


def reduce_network(net: InfluenceNetwork, state: NetworkState) -> ReducedNetwork:
    """Remove the compromised nodes of ``state`` and recompute derived quantities.

    Each surviving independent asset is scaled by the surviving mass of its
    influence column (one minus the shares held by removed nodes), surviving
    columns are renormalised by that same mass, and supports are summed over
    surviving supporters only. The result depends only on the set of removed
    nodes, so removal order never matters. A column whose influencers all
    died keeps no mass and is left all zero instead of renormalised; this can
    only happen when a node keeps none of its own asset.
    """
    if state.node_count != net.node_count:
        raise ValidationError(
            f"state is over {state.node_count} nodes, network has {net.node_count}"
        )
    idx = np.array(state.alive, dtype=int)
    if idx.size == 0:
        empty = _frozen(np.zeros(0))
        return ReducedNetwork(
            state=state,
            alive=(),
            adjusted_assets=empty,
            renormalized_influence=_frozen(np.zeros((0, 0))),
            effective_assets=empty,
            supports=empty,
            attack_values=empty,
            node_probs=_frozen(np.zeros((0, 4))),
        )

    sub = net.influence[np.ix_(idx, idx)]
    surviving_mass = sub.sum(axis=0)
    renorm = np.divide(sub, surviving_mass,
                       out=np.zeros_like(sub), where=surviving_mass > 0)
    adjusted = net.independent_assets[idx] * surviving_mass
    supports = net.support[np.ix_(idx, idx)].sum(axis=0)
    return ReducedNetwork(
        state=state,
        alive=state.alive,
        adjusted_assets=_frozen(adjusted),
        renormalized_influence=_frozen(renorm),
        effective_assets=_frozen(renorm @ adjusted),
        supports=_frozen(supports),
        attack_values=_frozen(renorm @ net.independent_assets[idx]),
        node_probs=_frozen(net.node_probs[idx]),
    )


def success_probability(reduced: ReducedNetwork, target: int, defended: bool) -> float:
    """Probability that an attack on ``target`` compromises it.

    Affine in the target's current support h: with full support the defended
    (undefended) probability is p_d1 (p_n1), with no support p_d0 (p_n0).
    ``target`` must be alive in the reduced network.
    """
    pos = reduced.position(target)
    h = reduced.supports[pos]
    p_d1, p_n1, p_d0, p_n0 = reduced.node_probs[pos]
    if defended:
        return float(p_d0 - (p_d0 - p_d1) * h)
    return float(p_n0 - (p_n0 - p_n1) * h)
