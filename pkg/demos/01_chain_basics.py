"""Walkthrough of the core chain workflow: build a small four-state
chain, push a distribution forward in time, classify its structure, and
compare simulated occupancies with the exact evolution."""

import numpy as np

from chainkit import (
    build_chain,
    classify,
    equal_weight,
    evolve,
    occupancy,
    point_mass,
    stationary_basis,
)

# A student's day: studying, coffee, being in bed, beer with friends.
labels = ["study", "coffee", "bed", "beer"]
P = [[0.5, 0.1, 0.2, 0.2],
     [1.0, 0.0, 0.0, 0.0],
     [0.3, 0.0, 0.5, 0.2],
     [0.0, 0.0, 0.5, 0.5]]
chain = build_chain(labels, P)

mu = point_mass(chain, "study")
print("start:", dict(zip(labels, mu)))
for t in (1, 2, 3):
    print(f"t={t}:", np.round(evolve(chain, mu, t), 4))

structure = classify(chain)
print("\nirreducible:", structure.irreducible)
print("ergodic:    ", structure.ergodic)
print("periodicity:", structure.periodicity)

basis = stationary_basis(chain, structure)
pi = equal_weight(basis)
print("stationary: ", np.round(pi, 4))
print("check pi P = pi:", np.max(np.abs(pi @ chain.p - pi)) < 1e-12)

# Monte Carlo check: occupancy frequencies approach the exact evolution.
occ = occupancy(chain, "study", length=3, seed=0, trajectories=5000)
print("\nsimulated t=1:", np.round(occ[1], 3))
print("exact     t=1:", np.round(evolve(chain, mu, 1), 3))
print("long-run occupancy approaches pi:",
      np.round(occupancy(chain, "study", 200, seed=0, trajectories=2000)[-1], 3))
