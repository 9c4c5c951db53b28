"""Moore-Penrose, group and inner inverses."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .matcore import DEFAULT_TOL, BlockMat, Tol, _cutoff, adj, as_cmat, fro, rank, svd

__all__ = [
    "PenroseResiduals",
    "pinv",
    "group_inverse",
    "inner_inverse",
    "penrose_residuals",
    "is_ep",
]


class PenroseResiduals(NamedTuple):
    """Frobenius residuals of the four Penrose equations, normalised by max(1, ||a||)."""

    r1: float  # a g a = a
    r2: float  # g a g = g
    r3: float  # (a g)^* = a g
    r4: float  # (g a)^* = g a

    def accepted(self, tol: Tol = DEFAULT_TOL, scale: float = 1.0) -> bool:
        return max(self) <= tol.threshold(scale)


def pinv(a, tol: Tol = DEFAULT_TOL):
    """Moore-Penrose inverse from the SVD.

    Only singular values above the :func:`~diamond_lab.matcore.rank` cutoff
    are inverted; the rest map to zero. The result is therefore
    discontinuous where the numerical rank drops.
    """
    if isinstance(a, BlockMat):
        return a.map(lambda b: pinv(b, tol))
    a = as_cmat(a)
    f = svd(a)
    keep = f.sigma > _cutoff(f.sigma, a.shape, tol)
    k = int(np.count_nonzero(keep))
    if k == 0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=np.complex128)
    return (f.right[:, :k] / f.sigma[:k]) @ adj(f.left[:, :k])


def penrose_residuals(a, g) -> PenroseResiduals:
    a, g = as_cmat(a, "a"), as_cmat(g, "g")
    if g.shape != a.shape[::-1]:
        raise ValueError(f"shape mismatch: candidate inverse has shape {g.shape}, "
                         f"expected {a.shape[::-1]}")
    ag, ga = a @ g, g @ a
    s = max(1.0, fro(a))
    return PenroseResiduals(
        fro(ag @ a - a) / s,
        fro(ga @ g - g) / s,
        fro(adj(ag) - ag) / s,
        fro(adj(ga) - ga) / s,
    )


def group_inverse(a, tol: Tol = DEFAULT_TOL):
    """Group inverse ``a#`` or ``None`` when it does not exist.

    Uses the full-rank factorisation ``a = F G`` from the SVD and returns
    ``F (G F)^-2 G``. Existence is decided by ``rank(a^2) == rank(a)``;
    a nearly singular core ``G F`` (condition number above
    ``1/rank_rel``) is also reported as non-existence.
    """
    if isinstance(a, BlockMat):
        parts = [group_inverse(b, tol) for b in a.blocks]
        return None if any(p is None for p in parts) else BlockMat(parts)
    a = as_cmat(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"group inverse needs a square matrix, got {a.shape}")
    f = svd(a)
    keep = f.sigma > _cutoff(f.sigma, a.shape, tol)
    r = int(np.count_nonzero(keep))
    if r == 0:
        return np.zeros_like(a)
    if rank(a @ a, tol) != r:
        return None
    F = f.left[:, :r] * f.sigma[:r]
    G = adj(f.right[:, :r])
    core = G @ F
    if np.linalg.cond(core) > 1.0 / max(tol.rank_rel, np.finfo(float).tiny):
        return None
    inv = np.linalg.inv(core)
    return F @ inv @ inv @ G


def is_ep(a, tol: Tol = DEFAULT_TOL) -> bool:
    """``a a^+ == a^+ a`` (range-Hermitian)."""
    a = as_cmat(a)
    g = pinv(a, tol)
    return fro(a @ g - g @ a) <= tol.threshold(1.0)


def inner_inverse(b, v, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Member ``b^+ + v - b^+ b v b b^+`` of the affine family of {1}-inverses.

    Every inner inverse of ``b`` arises this way; ``v = 0`` gives ``b^+``.
    """
    b, v = as_cmat(b, "b"), as_cmat(v, "v")
    if v.shape != b.shape[::-1]:
        raise ValueError(f"shape mismatch: v has shape {v.shape}, expected {b.shape[::-1]}")
    g = pinv(b, tol)
    return g + v - g @ b @ v @ b @ g
