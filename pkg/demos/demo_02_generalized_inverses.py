"""
Generalized inverses
====================

Moore-Penrose, group and inner inverses of small singular matrices.
"""

import numpy as np

from diamond_lab import group_inverse, inner_inverse, penrose_residuals, pinv

a = np.array([[0, 2], [0, 0]], dtype=complex)
print("pinv:\n", pinv(a).real)
print("Penrose residuals:", penrose_residuals(a, pinv(a)))

##############################################################################
# The same matrix is nilpotent: ``a^2 = 0`` has smaller rank than ``a``, so
# no group inverse exists and the function answers ``None``.

print("group inverse of a nilpotent:", group_inverse(a))

b = np.array([[2, 4], [1, 2]], dtype=complex)
print("group inverse of a rank-one b with trace 4:\n", group_inverse(b).real)

##############################################################################
# Inner inverses form an affine family around ``pinv(b)``. Every member
# satisfies ``b g b = b``; only the origin also has selfadjoint ``b g``.

v = np.array([[0, 1], [1, 0]], dtype=complex)
g = inner_inverse(b, v)
print("b g b = b:", np.allclose(b @ g @ b, b))
print("b g selfadjoint:", np.allclose(b @ g, (b @ g).conj().T))
