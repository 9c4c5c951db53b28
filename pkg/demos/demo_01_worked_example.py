"""
The diamond order on a 2x2 example
==================================

Two matrices can sit in the diamond order without being orthogonal. The
pair below is the smallest interesting case: ``a`` is a matrix unit and
``u`` has its column space tilted away from ``a``'s.
"""

import numpy as np

from diamond_lab import leq_diamond, leq_star
from diamond_lab.orders import orthogonal

a = np.array([[1, 0], [0, 0]], dtype=complex)
u = np.array([[0, 1], [0, 1]], dtype=complex) / np.sqrt(2)

##############################################################################
# The product ``a u* a`` vanishes, and that alone is enough for the cubic
# identity ``a a* a = a (a+u)* a``.

print("||a u* a|| =", np.linalg.norm(a @ u.conj().T @ a))

##############################################################################
# The report carries the three residuals, each next to its threshold.

rep = leq_diamond(a, a + u)
print("\n".join(rep.lines()))

##############################################################################
# ``u* a`` is nonzero, so the pair is not orthogonal and the stronger star
# order fails.

print("orthogonal:", orthogonal(a, u))
print("star-below:", leq_star(a, a + u).holds)
