"""Dense complex matrix primitives shared by every other module.

Matrices are plain 2-D ``complex128`` numpy arrays. Elements of a
block-diagonal algebra ``M_n1 + ... + M_nk`` are :class:`BlockMat`.

Random generation
-----------------
All randomness goes through :func:`rng_for`, which builds a numpy
``Generator`` on the PCG64 bit generator from a ``SeedSequence`` whose
entropy is the tuple of integer keys. PCG64 and ``SeedSequence`` are
specified bit-for-bit by numpy, so a given ``(kind, n, seed)`` yields the
same matrix on every platform. String keys are folded in with CRC-32.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Tol",
    "DEFAULT_TOL",
    "SvdFactors",
    "BlockMat",
    "as_cmat",
    "adj",
    "fro",
    "unit",
    "svd",
    "rank",
    "approx_eq",
    "is_projection",
    "rng_for",
    "ginibre",
    "sample",
    "SAMPLE_KINDS",
]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Tol:
    """Tolerance policy for every approximate predicate.

    ``atol`` and ``rtol`` build residual thresholds ``atol + rtol * scale``.
    ``rank_rel`` is the singular-value cutoff as a fraction of
    ``sigma_max * max(rows, cols)``.
    """

    atol: float = 1e-9
    rtol: float = 1e-9
    rank_rel: float = 1e-12

    def __post_init__(self):
        for name in ("atol", "rtol", "rank_rel"):
            v = getattr(self, name)
            if not (v >= 0 and np.isfinite(v)):
                raise ValueError(f"Tol.{name} must be a finite nonnegative real, got {v!r}")

    def threshold(self, scale: float) -> float:
        return self.atol + self.rtol * scale


DEFAULT_TOL = Tol()


class SvdFactors(NamedTuple):
    left: np.ndarray
    sigma: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        k = self.sigma.shape[0]
        return (self.left[:, :k] * self.sigma) @ adj(self.right[:, :k])


def as_cmat(a, name: str = "matrix") -> np.ndarray:
    """Validate and convert ``a`` to a finite 2-D complex array."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a nonempty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def adj(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(a).T


def fro(a) -> float:
    if isinstance(a, BlockMat):
        return float(np.sqrt(sum(np.linalg.norm(b) ** 2 for b in a.blocks)))
    return float(np.linalg.norm(a))


def unit(n: int, i: int, j: int, m: int | None = None) -> np.ndarray:
    """Matrix unit E_ij (zero-based) of shape ``(n, m or n)``."""
    e = np.zeros((n, n if m is None else m), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def _check_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


@dataclass(frozen=True, eq=False)
class BlockMat:
    """Element of a block-diagonal algebra; every operation acts blockwise."""

    blocks: tuple

    def __init__(self, blocks: Iterable):
        bl = tuple(as_cmat(b, f"block {k}") for k, b in enumerate(blocks))
        if not bl:
            raise ValueError("BlockMat needs at least one block")
        for k, b in enumerate(bl):
            if b.shape[0] != b.shape[1]:
                raise ValueError(f"block {k} is not square: {b.shape}")
        object.__setattr__(self, "blocks", bl)

    @property
    def sizes(self) -> tuple:
        return tuple(b.shape[0] for b in self.blocks)

    @property
    def shape(self) -> tuple:
        s = sum(self.sizes)
        return (s, s)

    def _check(self, other: "BlockMat") -> None:
        if not isinstance(other, BlockMat) or other.sizes != self.sizes:
            raise ValueError(f"block structure mismatch: {self.sizes} vs "
                             f"{getattr(other, 'sizes', type(other).__name__)}")

    def map(self, fn) -> "BlockMat":
        return BlockMat(fn(b) for b in self.blocks)

    def adjoint(self) -> "BlockMat":
        return self.map(adj)

    def dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.complex128)
        k = 0
        for b in self.blocks:
            m = b.shape[0]
            out[k:k + m, k:k + m] = b
            k += m
        return out

    @classmethod
    def identity(cls, sizes: Sequence[int]) -> "BlockMat":
        return cls(np.eye(m, dtype=np.complex128) for m in sizes)

    def __matmul__(self, other):
        self._check(other)
        return BlockMat(x @ y for x, y in zip(self.blocks, other.blocks))

    def __add__(self, other):
        self._check(other)
        return BlockMat(x + y for x, y in zip(self.blocks, other.blocks))

    def __sub__(self, other):
        self._check(other)
        return BlockMat(x - y for x, y in zip(self.blocks, other.blocks))

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return self.map(lambda x: scalar * x)

    __rmul__ = __mul__

    def __repr__(self):
        return f"BlockMat(sizes={self.sizes})"


def svd(a) -> SvdFactors:
    """Full SVD ``a = left @ diag(sigma) @ right^*`` with sigma nonincreasing."""
    a = as_cmat(a)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(
            f"SVD did not converge for {a.shape[0]}x{a.shape[1]} matrix") from exc
    return SvdFactors(u, s, adj(vh))


def _cutoff(sigma: np.ndarray, shape: tuple, tol: Tol) -> float:
    smax = float(sigma[0]) if sigma.size else 0.0
    return max(tol.rank_rel * smax * max(shape), tol.atol)


def rank(a, tol: Tol = DEFAULT_TOL) -> int:
    """Numerical rank.

    Counts singular values above ``rank_rel * sigma_max * max(m, n)``,
    floored at ``atol`` so that the zero matrix and floating-point noise
    of norm below ``atol`` have rank 0.
    """
    if isinstance(a, BlockMat):
        return sum(rank(b, tol) for b in a.blocks)
    a = as_cmat(a)
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.count_nonzero(s > _cutoff(s, a.shape, tol)))


def approx_eq(a, b, tol: Tol = DEFAULT_TOL) -> bool:
    """``||a - b||_F <= atol + rtol * max(||a||_F, ||b||_F)``."""
    if isinstance(a, BlockMat) or isinstance(b, BlockMat):
        if not (isinstance(a, BlockMat) and isinstance(b, BlockMat)):
            raise ValueError("cannot compare BlockMat with a dense matrix")
        a._check(b)
        return fro(a - b) <= tol.threshold(max(fro(a), fro(b)))
    a, b = as_cmat(a), as_cmat(b)
    _check_same_shape(a, b)
    return fro(a - b) <= tol.threshold(max(fro(a), fro(b)))


def is_projection(p, tol: Tol = DEFAULT_TOL) -> bool:
    """Selfadjoint idempotent within tolerance."""
    if isinstance(p, BlockMat):
        return all(is_projection(b, tol) for b in p.blocks)
    p = as_cmat(p)
    if p.shape[0] != p.shape[1]:
        return False
    return approx_eq(p @ p, p, tol) and approx_eq(adj(p), p, tol)


# ---------------------------------------------------------------- sampling

def _key(k) -> int:
    if isinstance(k, str):
        return zlib.crc32(k.encode())
    return int(k) & _MASK64


def rng_for(*keys) -> np.random.Generator:
    """Reproducible generator keyed by ints and strings."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([_key(k) for k in keys])))


def ginibre(rng: np.random.Generator, m: int, n: int | None = None) -> np.ndarray:
    """i.i.d. standard complex Gaussian entries (E|z|^2 = 1)."""
    n = m if n is None else n
    return (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / np.sqrt(2)


def _haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(ginibre(rng, n))
    d = np.diag(r)
    ph = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return q * ph


SAMPLE_KINDS = ("ginibre", "unitary", "projection", "partial_isometry", "rank", "hermitian")


def sample(kind: str, n: int, seed: int, r: int | None = None) -> np.ndarray:
    """Seeded structured test element of M_n.

    Parameters
    ----------
    kind : str
        One of ``ginibre``, ``unitary``, ``projection``, ``partial_isometry``,
        ``rank``, ``hermitian``. The three rank-parametrised kinds take ``r``.
    n : int
        Matrix size.
    seed : int
        Any integer; reduced mod 2**64.
    r : int, optional
        Rank for ``projection``, ``partial_isometry`` and ``rank``.
    """
    if kind not in SAMPLE_KINDS:
        raise ValueError(f"unknown sample kind {kind!r}; expected one of {SAMPLE_KINDS}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    needs_r = kind in ("projection", "partial_isometry", "rank")
    if needs_r:
        if r is None:
            raise ValueError(f"sample kind {kind!r} needs a rank r")
        if not 0 <= r <= n:
            raise ValueError(f"rank r={r} out of range for n={n}")
    rng = rng_for(kind, n, r if needs_r else 0, seed)

    if kind == "ginibre":
        return ginibre(rng, n)
    if kind == "unitary":
        return _haar_unitary(rng, n)
    if kind == "hermitian":
        g = ginibre(rng, n)
        return (g + adj(g)) / 2
    if kind == "projection":
        v = _haar_unitary(rng, n)[:, :r]
        return v @ adj(v)
    if kind == "partial_isometry":
        w1 = _haar_unitary(rng, n)[:, :r]
        w2 = _haar_unitary(rng, n)[:, :r]
        return w1 @ adj(w2)
    # rank
    return ginibre(rng, n, r) @ ginibre(rng, r, n)
