"""Rank-one elements and structural characterisations of the diamond order.

Covers minimal elements (rank-one matrices), maximal elements (invertible
matrices), the projection characterisation, the invertibility probe over
matrix units, and multiplication by scalar multiples of unitaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geninv import pinv
from .matcore import (DEFAULT_TOL, BlockMat, Tol, adj, approx_eq, as_cmat, fro, ginibre,
                      is_projection, rank, rng_for, sample, unit)
from .orders import diamond_extension, leq_diamond

__all__ = [
    "Inapplicable",
    "RankOne",
    "trace_functional",
    "minimal_below",
    "is_minimal_diamond",
    "is_maximal_diamond",
    "maximality_witness",
    "projection_characterization",
    "ProbeStep",
    "ProbeResult",
    "invertibility_probe",
    "scalar_factor",
    "unitary_mult_preserves",
    "DefectResult",
    "canonical_projections",
    "scalar_unitary_defect",
]


class Inapplicable(ValueError):
    """A check was asked about inputs outside its hypotheses."""


@dataclass(frozen=True, eq=False)
class RankOne:
    """Rank-one matrix ``column @ row^*``."""

    column: np.ndarray
    row: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return np.outer(self.column, np.conj(self.row))

    @property
    def trace(self) -> complex:
        return complex(np.vdot(self.row, self.column))

    @classmethod
    def from_matrix(cls, u, tol: Tol = DEFAULT_TOL) -> "RankOne":
        u = as_cmat(u)
        if rank(u, tol) != 1:
            raise ValueError(f"matrix has numerical rank {rank(u, tol)}, not 1")
        left, s, vh = np.linalg.svd(u)
        return cls(left[:, 0] * s[0], np.conj(vh[0]))


def trace_functional(u: RankOne, x) -> complex:
    """The scalar ``tau_u(x)`` with ``u x u = tau_u(x) u``; ``tau_u(1)`` is the trace of u."""
    x = as_cmat(x, "x")
    if x.shape != (u.row.shape[0], u.column.shape[0]):
        raise ValueError(f"shape mismatch: x has shape {x.shape}, u is "
                         f"{u.column.shape[0]}x{u.row.shape[0]}")
    return complex(np.conj(u.row) @ x @ u.column)


def minimal_below(a, tol: Tol = DEFAULT_TOL, seed: int = 0, w=None) -> RankOne:
    """Rank-one ``u`` diamond-below a nonzero ``a``.

    Draws rank-one ``w`` with ``a w != 0`` (or uses the given ``w``), sets
    ``v = w (a w)^+`` so that ``a v`` is a rank-one projection, and returns
    ``u = a v a``.
    """
    a = as_cmat(a)
    n = a.shape[0]
    if fro(a) <= tol.atol:
        raise ValueError("minimal_below needs a nonzero element")
    rng = rng_for("minimal-below", n, seed)
    for _ in range(64):
        if w is None:
            cand = np.outer(ginibre(rng, n, 1)[:, 0], ginibre(rng, 1, n)[0])
        else:
            cand = as_cmat(w, "w")
        aw = a @ cand
        if fro(aw) > tol.threshold(fro(a) * fro(cand)):
            break
        if w is not None:
            raise ValueError("a w = 0 for the supplied w")
    else:  # pragma: no cover - probability zero for Gaussian w
        raise RuntimeError("could not find w with a w != 0")
    v = cand @ pinv(aw, tol)
    av = a @ v
    if not (is_projection(av, tol) and rank(av, tol) == 1):
        raise RuntimeError("a v is not a rank-one projection")
    return RankOne.from_matrix(a @ v @ a, tol)


def is_minimal_diamond(u, probes=(), tol: Tol = DEFAULT_TOL) -> bool:
    """Minimal nonzero elements are exactly the rank-one matrices.

    Each nonzero probe ``v`` diamond-below a rank-one ``u`` must equal
    ``u``; a probe violating this raises ``AssertionError``.
    """
    u = as_cmat(u)
    if fro(u) <= tol.atol:
        raise ValueError("minimality is defined on nonzero elements")
    minimal = rank(u, tol) == 1
    if minimal:
        for k, v in enumerate(probes):
            v = as_cmat(v, f"probe {k}")
            if fro(v) > tol.atol and leq_diamond(v, u, tol).holds and not approx_eq(v, u, tol):
                raise AssertionError(f"probe {k} lies strictly diamond-below a rank-one element")
    return minimal


def is_maximal_diamond(a, tol: Tol = DEFAULT_TOL) -> bool:
    """Maximal elements are the invertible ones (blockwise for BlockMat)."""
    if isinstance(a, BlockMat):
        return all(is_maximal_diamond(b, tol) for b in a.blocks)
    a = as_cmat(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got {a.shape}")
    return rank(a, tol) == a.shape[0]


def maximality_witness(a, tol: Tol = DEFAULT_TOL, seed: int = 0):
    """``b != a`` with ``a`` diamond-below ``b``, or ``None`` when ``a`` is invertible."""
    a = as_cmat(a)
    if is_maximal_diamond(a, tol):
        return None
    rng = rng_for("maximality", a.shape[0], seed)
    for _ in range(16):
        b = diamond_extension(a, ginibre(rng, a.shape[0]), tol)
        if leq_diamond(a, b, tol).holds and not approx_eq(a, b, tol):
            return b
    raise RuntimeError("singular element without a strict diamond upper bound")


def projection_characterization(p, q=None, tol: Tol = DEFAULT_TOL) -> bool:
    """``p <> q`` and ``q - p <> q`` for a projection ``q`` (identity by default).

    True exactly when ``p`` is a projection (below ``q``).
    """
    p = as_cmat(p, "p")
    q = np.eye(p.shape[0], dtype=np.complex128) if q is None else as_cmat(q, "q")
    if not is_projection(q, tol):
        raise Inapplicable("q is not a projection")
    return leq_diamond(p, q, tol).holds and leq_diamond(q - p, q, tol).holds


class ProbeStep(NamedTuple):
    i: int
    j: int
    left_ok: bool
    right_ok: bool
    reason: str


class ProbeResult(NamedTuple):
    invertible: bool
    transcript: list

    @property
    def first_failure(self):
        return next((s for s in self.transcript if not (s.left_ok and s.right_ok)), None)


def _range_contains(big, small, tol):
    return fro(big @ pinv(big, tol) @ small - small) <= tol.threshold(fro(small))


def invertibility_probe(a, tol: Tol = DEFAULT_TOL) -> ProbeResult:
    """Probe ``a`` with every matrix unit ``u = E_ij``.

    A probe passes when ``x = u u^+ a`` and ``y = a u^+ u`` are nonzero and
    both diamond-below ``a``. All probes pass exactly when ``a`` is
    invertible.
    """
    a = as_cmat(a)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError(f"expected a square matrix, got {a.shape}")
    steps = []
    zero = tol.threshold(fro(a))
    for i in range(n):
        for j in range(n):
            u = unit(n, i, j)
            g = adj(u)  # pinv of a matrix unit is its adjoint
            x, y = u @ g @ a, a @ g @ u
            left = fro(x) > zero and leq_diamond(x, a, tol).holds
            right = fro(y) > zero and leq_diamond(y, a, tol).holds
            reasons = []
            if not left:
                reasons.append("col(u) not in col(a)" if not _range_contains(a, u, tol)
                               else "u u^+ a not below a")
            if not right:
                reasons.append("row(u) not in row(a)" if not _range_contains(adj(a), adj(u), tol)
                               else "a u^+ u not below a")
            steps.append(ProbeStep(i, j, left, right, "; ".join(reasons) or "ok"))
    return ProbeResult(all(s.left_ok and s.right_ok for s in steps), steps)


def scalar_factor(m, tol: Tol = DEFAULT_TOL):
    """``lam`` with ``m = lam * 1`` (mean of the diagonal), or ``None``."""
    m = as_cmat(m)
    n = m.shape[0]
    lam = float(np.mean(np.real(np.diag(m))))
    if fro(m - lam * np.eye(n)) <= n * tol.threshold(abs(lam)):
        return lam
    return None


def unitary_mult_preserves(u, pairs, tol: Tol = DEFAULT_TOL) -> bool:
    """Check ``a <> b  =>  u a <> u b`` (and ``a u <> b u``) over ``pairs``.

    Requires ``u* u = lam 1`` with ``lam > 0``; raises :class:`Inapplicable`
    otherwise.
    """
    u = as_cmat(u)
    lam = scalar_factor(adj(u) @ u, tol)
    if lam is None or lam <= tol.atol:
        raise Inapplicable("u* u is not a positive multiple of the identity")
    right = scalar_factor(u @ adj(u), tol) is not None
    for a, b in pairs:
        if not leq_diamond(a, b, tol).holds:
            continue
        if not leq_diamond(u @ a, u @ b, tol).holds:
            return False
        if right and not leq_diamond(a @ u, b @ u, tol).holds:
            return False
    return True


class DefectResult(NamedTuple):
    """Outcome of :func:`scalar_unitary_defect`.

    ``status`` is ``"no_defect"``, ``"defect"`` or ``"inconclusive"``. A
    defect witness ``(p, a, b)`` has ``a <> b`` but not ``a u <> b u``, or
    the reverse implication broken; ``p`` is the projection that produced
    it (``None`` for the kernel witness of a singular ``u``).
    """

    status: str
    witness: tuple | None = None


def canonical_projections(n: int) -> list:
    """``E_ii`` and the projections onto ``(e_i + e_j)/sqrt 2``, ``n(n+1)/2`` in all."""
    out = [unit(n, i, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = np.zeros(n, dtype=np.complex128)
            v[[i, j]] = 1 / np.sqrt(2)
            out.append(np.outer(v, v))
    return out


def _is_right_defect(a, b, u, tol):
    before = leq_diamond(a, b, tol).holds
    after = leq_diamond(a @ u, b @ u, tol).holds
    return before != after


def scalar_unitary_defect(u, tol: Tol = DEFAULT_TOL, seed: int = 0,
                          budget: int = 50) -> DefectResult:
    """Search for a pair showing that right multiplication by ``u`` breaks the order.

    Nothing to find when ``u u* = lam 1``. Otherwise every projection ``p``
    gives candidate pairs ``(u^+ p, u^+)`` and ``(u^+ - u^+ p, u^+)``, which
    are diamond-ordered, and at least one ``p`` maps them through ``x -> x u``
    to an unordered pair. Canonical projections are tried first, then
    ``budget`` random ones.
    """
    u = as_cmat(u)
    n = u.shape[0]
    if u.shape[1] != n:
        raise ValueError(f"expected a square matrix, got {u.shape}")
    lam = scalar_factor(u @ adj(u), tol)
    if lam is not None and lam > tol.atol:
        return DefectResult("no_defect")
    g = pinv(u, tol)
    if rank(u, tol) < n:
        # (1 - u u^+) u = 0 sits below 0 after multiplication but not before
        a = np.eye(n) - u @ g
        b = np.zeros_like(u)
        if _is_right_defect(a, b, u, tol):
            return DefectResult("defect", (None, a, b))
    rng = rng_for("defect-search", n, seed)
    candidates = canonical_projections(n)
    for k in range(budget):
        r = int(rng.integers(1, n)) if n > 1 else 1
        candidates.append(sample("projection", n, int(rng.integers(0, 2**63)), r=r))
    for p in candidates:
        for a in (g @ p, g - g @ p):
            if _is_right_defect(a, g, u, tol):
                return DefectResult("defect", (p, a, g))
    return DefectResult("inconclusive")
