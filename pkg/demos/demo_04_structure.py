"""
Minimal and maximal elements
============================

Rank-one matrices are the atoms of the diamond order and invertible
matrices are its maximal elements. Projections are singled out by a
two-sided condition against the identity.
"""

import numpy as np

from diamond_lab.matcore import rank, sample
from diamond_lab.orders import leq_diamond
from diamond_lab.structure import (
    invertibility_probe, maximality_witness, minimal_below, projection_characterization,
)

a = sample("rank", 4, seed=1, r=3)
u = minimal_below(a, seed=1).matrix
print("rank of the atom:", rank(u), "| below a:", leq_diamond(u, a).holds)

##############################################################################
# A singular element always has a strict upper bound.

b = maximality_witness(a, seed=2)
print("witness above a:", leq_diamond(a, b).holds, "| rank", rank(b))

##############################################################################
# The probe tries every matrix unit. On a singular input it records which
# range inclusion broke first.

probe = invertibility_probe(np.diag([1.0, 0.0]))
print("invertible:", probe.invertible, "| first failure:", probe.first_failure)

##############################################################################
# ``p`` and ``1 - p`` both diamond-below the identity exactly when ``p`` is a
# projection.

for p in (np.diag([1.0, 0.0]), np.array([[1.0, 1.0], [0.0, 0.0]]), 0.5 * np.eye(2)):
    print(p.tolist(), "->", projection_characterization(p))
