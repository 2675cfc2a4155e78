"""
Influence networks for security assets
=======================================

A network's intrinsic ("independent") security assets get redistributed
through a column-stochastic influence matrix: entry (i, j) is the share of
node j's asset held by node i. This script builds the bundled three-node
network by hand and walks through what happens as nodes fall.
"""

import numpy as np

from secgame import (
    InfluenceNetwork,
    NetworkState,
    effective_assets,
    reduce_network,
    success_probability,
)

np.set_printoptions(precision=4, suppress=True)

# node 1 keeps 90% of its own asset and holds 20% of node 2's;
# node 3 holds 10% of both others' assets and all of its own
influence = np.array([
    [0.9, 0.2, 0.0],
    [0.0, 0.7, 0.0],
    [0.1, 0.1, 1.0],
])
assets = np.array([10.0, 10.0, 20.0])

# support lowers the chance a node is compromised when attacked
support = np.array([
    [0.7, 0.0, 0.0],
    [0.2, 0.5, 0.0],
    [0.1, 0.3, 0.9],
])

# per node: compromise probability when (defended, undefended) x (full, no) support
probs = np.tile([0.2, 0.4, 0.5, 0.7], (3, 1))

net = InfluenceNetwork(influence, assets, support, probs)

print("independent assets:", assets)
print("effective assets:  ", effective_assets(net))
print("total is conserved:", effective_assets(net).sum(), "==", assets.sum())

# Now node 1 falls. Its edges vanish, the surviving columns renormalise,
# and every survivor keeps only the share of its asset that node 1 did not hold.
one_down = reduce_network(net, NetworkState.from_pattern("100"))
print("\nafter node 1 is compromised (state (1,0,0)):")
print("  survivors:          ", one_down.alive)
print("  adjusted assets:    ", one_down.adjusted_assets)
print("  renormalised matrix:\n", one_down.renormalized_influence)
print("  effective assets:   ", one_down.effective_assets)
print("  attack values:      ", one_down.attack_values)
print("  supports:           ", one_down.supports)

# The two asset vectors answer different questions: effective assets keep the
# books balanced (their total equals the adjusted total), attack values price
# what an attacker would capture next (the survivors' full assets, reshared).

# Success probabilities interpolate between the no-support and full-support
# corner cases, so losing a supporter makes a node easier to take: node 3
# gives node 2 a 0.3 support, and its fall costs node 2 exactly that.
healthy = reduce_network(net, NetworkState.healthy(3))
three_down = reduce_network(net, NetworkState.from_pattern("001"))
print("\nattack on node 2 at full health, defended:   ",
      success_probability(healthy, 1, defended=True))
print("attack on node 2 after node 3 fell, defended:",
      success_probability(three_down, 1, defended=True))

# Removal order never matters: reducing by the set {1, 3} in one shot is the
# same as removing the nodes one at a time in either order.
both_down = reduce_network(net, NetworkState.from_pattern("101"))
print("\nafter nodes 1 and 3 are compromised:")
print("  adjusted asset of node 2:", both_down.adjusted_assets)
print("  effective asset of node 2:", both_down.effective_assets)
