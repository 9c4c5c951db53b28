"""
Comparing matrix orders and drawing a Hasse diagram
===================================================

The diamond order sits between the space pre-order and the star order.
A random sample of generated pairs shows the inclusions, and a handful of
elements gives a Hasse diagram in DOT format.
"""

import numpy as np

from diamond_lab import OrderKind, gen_diamond_pair, hasse, leq
from diamond_lab.matcore import unit

##############################################################################
# Generated diamond pairs are always space-ordered. The stronger orders
# hold only on part of the sample, and the sharp order also needs both
# elements to be group invertible.

counts = {k: 0 for k in OrderKind}
for seed in range(200):
    a, b = gen_diamond_pair(3, seed)
    for k in OrderKind:
        counts[k] += leq(k, a, b).holds
for k, c in counts.items():
    print(f"{k.value:>11}: {c}/200")

##############################################################################
# A small poset: zero, the two diagonal matrix units, and the identity.

elements = [np.zeros((2, 2)), unit(2, 0, 0), unit(2, 1, 1), np.eye(2)]
diagram = hasse(elements, "diamond")
print(diagram.to_dot(["0", "E11", "E22", "I"]))
