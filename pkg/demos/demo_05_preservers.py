"""
Linear maps that preserve the diamond order
===========================================

Bijective preservers are scalar multiples of unitary similarities, with
or without a transpose. This demo builds such a map, recovers its
parameters, and shows that a diagonal left multiplier is caught.
"""

import numpy as np

from diamond_lab import decompose_preserver, make_canonical, preserves_diamond
from diamond_lab.matcore import sample
from diamond_lab.preservers import jordan_embedding, jordan_star_check, left_multiplication

U, V = sample("unitary", 3, 10), sample("unitary", 3, 11)
T = make_canonical(0.6, U, V, transpose=True)
print(preserves_diamond(T, pairs=200))

##############################################################################
# The decomposition reads ``h = T(1)``, checks that ``h h*`` is scalar, and
# tells a *-isomorphism from a *-anti-isomorphism by products of matrix
# units. ``scale`` is the factor in front of ``U a^T V``.

rep = decompose_preserver(T)
print("\n".join(rep.lines()))

##############################################################################
# Left multiplication by a non-scalar diagonal matrix fails, and the sweep
# returns the pair that shows it.

verdict = preserves_diamond(left_multiplication(np.diag([1.0, 2.0])), pairs=200)
print("preserves:", bool(verdict), "| direction:", verdict.direction)

##############################################################################
# ``a -> a (+) a^T`` is a Jordan *-homomorphism into a block algebra, and it
# preserves the order blockwise.

print("Jordan *-hom:", jordan_star_check(jordan_embedding, n=3))
