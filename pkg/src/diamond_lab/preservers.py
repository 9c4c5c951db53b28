"""Linear maps on M_n and diamond-order preservation.

A :class:`LinearMap` stores its ``n^2 x n^2`` supermatrix with respect to
column-major vectorisation: ``vec(a)[i + j*n] = a[i, j]``. Under this
convention ``vec(U a V) = (V^T kron U) vec(a)``.

Functions that only evaluate a map (the Jordan checks and the forward
preservation sweep) also accept any callable, including maps into a
block-diagonal algebra such as :func:`jordan_embedding`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .geninv import pinv
from .matcore import (DEFAULT_TOL, BlockMat, Tol, adj, approx_eq, as_cmat, fro, ginibre,
                      is_projection, rank, rng_for, sample, unit)
from .orders import gen_diamond_pair, leq_diamond
from .structure import Inapplicable

__all__ = [
    "vec",
    "unvec",
    "commutation_matrix",
    "CanonicalTag",
    "LinearMap",
    "apply",
    "make_canonical",
    "left_multiplication",
    "jordan_embedding",
    "jordan_star_check",
    "mp_preservation_check",
    "PreserverVerdict",
    "preserves_diamond",
    "DecompositionReport",
    "decompose_preserver",
    "rro_check",
]


def vec(a) -> np.ndarray:
    return np.asarray(a, dtype=np.complex128).reshape(-1, order="F")


def unvec(v, n: int) -> np.ndarray:
    return np.asarray(v).reshape((n, n), order="F")


def commutation_matrix(n: int) -> np.ndarray:
    """``K`` with ``K vec(a) = vec(a^T)``."""
    k = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            k[j + i * n, i + j * n] = 1.0
    return k


@dataclass(frozen=True, eq=False)
class CanonicalTag:
    """``a -> lam U a V`` (or ``lam U a^T V`` when ``transpose``)."""

    lam: float
    U: np.ndarray
    V: np.ndarray
    transpose: bool = False

    def supermatrix(self) -> np.ndarray:
        s = self.lam * np.kron(self.V.T, self.U)
        if self.transpose:
            s = s @ commutation_matrix(self.U.shape[0])
        return s


@dataclass(frozen=True, eq=False)
class LinearMap:
    dim: int
    super: np.ndarray
    tag: object = None

    def __post_init__(self):
        s = as_cmat(self.super, "supermatrix")
        n2 = self.dim * self.dim
        if s.shape != (n2, n2):
            raise ValueError(f"supermatrix of a map on M_{self.dim} must be {n2}x{n2}, got {s.shape}")
        object.__setattr__(self, "super", s)
        if isinstance(self.tag, CanonicalTag):
            if fro(self.tag.supermatrix() - s) > 1e-12 * max(1.0, fro(s)):
                raise ValueError("canonical tag does not reproduce the supermatrix")

    @classmethod
    def from_function(cls, fn: Callable, n: int, tag=None) -> "LinearMap":
        cols = [vec(fn(unit(n, k % n, k // n))) for k in range(n * n)]
        return cls(n, np.column_stack(cols), tag)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, np.eye(n * n, dtype=np.complex128), "identity")

    def __call__(self, a) -> np.ndarray:
        return apply(self, a)

    def is_invertible(self, tol: Tol = DEFAULT_TOL) -> bool:
        return rank(self.super, tol) == self.dim ** 2

    def inverse(self, tol: Tol = DEFAULT_TOL) -> "LinearMap":
        if not self.is_invertible(tol):
            raise ValueError("linear map is not invertible")
        return LinearMap(self.dim, np.linalg.inv(self.super))


def apply(T: LinearMap, a) -> np.ndarray:
    a = as_cmat(a)
    if a.shape != (T.dim, T.dim):
        raise ValueError(f"map acts on {T.dim}x{T.dim} matrices, got {a.shape}")
    return unvec(T.super @ vec(a), T.dim)


def _is_unitary(u, tol):
    return approx_eq(adj(u) @ u, np.eye(u.shape[0]), tol)


def make_canonical(lam: float, U, V, transpose: bool = False,
                   tol: Tol = DEFAULT_TOL) -> LinearMap:
    """``a -> lam U a V`` or ``a -> lam U a^T V`` for unitaries ``U``, ``V``."""
    U, V = as_cmat(U, "U"), as_cmat(V, "V")
    if U.shape != V.shape or U.shape[0] != U.shape[1]:
        raise ValueError(f"U and V must be square of equal size, got {U.shape}, {V.shape}")
    if not (_is_unitary(U, tol) and _is_unitary(V, tol)):
        raise ValueError("U and V must be unitary")
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    tag = CanonicalTag(float(lam), U, V, bool(transpose))
    return LinearMap(U.shape[0], tag.supermatrix(), tag)


def left_multiplication(d) -> LinearMap:
    """``a -> d a``."""
    d = as_cmat(d)
    n = d.shape[0]
    return LinearMap(n, np.kron(np.eye(n), d), "left_multiplication")


def jordan_embedding(a) -> BlockMat:
    """``a -> a (+) a^T`` into ``M_n (+) M_n``: a Jordan *-homomorphism that is
    neither multiplicative nor anti-multiplicative."""
    a = as_cmat(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got {a.shape}")
    return BlockMat([a, a.T])


def _dim_of(T, n):
    if isinstance(T, LinearMap):
        return T.dim
    if n is None:
        raise ValueError("n is required when the map is a plain callable")
    return n


def _test_elements(n: int, count: int, seed: int):
    rng = rng_for("test-elements", n, seed)
    kinds = ("ginibre", "hermitian", "projection", "rank")
    for k in range(count):
        kind = kinds[k % len(kinds)]
        s = int(rng.integers(0, 2**63))
        if kind in ("projection", "rank"):
            yield sample(kind, n, s, r=int(rng.integers(0, n + 1)))
        else:
            yield sample(kind, n, s)


def jordan_star_check(T, n: int | None = None, samples: int = 24, seed: int = 0,
                      tol: Tol = DEFAULT_TOL) -> bool:
    """``T(a^2) = T(a)^2`` and ``T(a*) = T(a)*`` on sampled elements."""
    n = _dim_of(T, n)
    for a in _test_elements(n, samples, seed):
        ta = T(a)
        if not approx_eq(T(a @ a), ta @ ta, tol):
            return False
        ta_adj = ta.adjoint() if isinstance(ta, BlockMat) else adj(ta)
        if not approx_eq(T(adj(a)), ta_adj, tol):
            return False
    return True


def mp_preservation_check(T, n: int | None = None, samples: int = 24, seed: int = 0,
                          tol: Tol = DEFAULT_TOL) -> bool:
    """``T(a^+) = T(a)^+`` on sampled elements of assorted ranks.

    Only meaningful for Jordan *-homomorphisms; raises :class:`Inapplicable`
    when ``T`` fails :func:`jordan_star_check`.
    """
    n = _dim_of(T, n)
    if not jordan_star_check(T, n, samples, seed, tol):
        raise Inapplicable("map is not a Jordan *-homomorphism")
    for a in _test_elements(n, samples, seed + 1):
        if not approx_eq(pinv(T(a), tol), T(pinv(a, tol)), tol):
            return False
    return True


@dataclass(frozen=True)
class PreserverVerdict:
    forward_ok: bool
    backward_ok: bool | None
    sample_count: int
    counterexample: tuple | None = None
    direction: str = ""

    def __bool__(self):
        return self.forward_ok and self.backward_ok is not False


def _unrelated_pair(n, rng):
    """Pairs that are almost never diamond-ordered yet near ordered ones."""
    a, b = gen_diamond_pair(n, int(rng.integers(0, 2**63)))
    k = int(rng.integers(0, 4))
    if k == 0:
        return a, b + 1e-3 * ginibre(rng, n)
    if k == 1:
        return a, 2 * a
    if k == 2:
        return a, a + ginibre(rng, n)
    return sample("rank", n, int(rng.integers(0, 2**63)), r=int(rng.integers(1, n + 1))), b


def _informative_pairs(n, count, rng, tol):
    """Generated diamond pairs, skipping ``a = 0`` and ``a = b`` (every linear map
    keeps those ordered). Gives up after ``20 * count`` draws."""
    got = 0
    for _ in range(20 * count):
        if got == count:
            return
        a, b = gen_diamond_pair(n, int(rng.integers(0, 2**63)), tol=tol)
        if fro(a) <= tol.atol or approx_eq(a, b, tol):
            continue
        got += 1
        yield a, b


def preserves_diamond(T, n: int | None = None, pairs: int = 500, seed: int = 0,
                      tol: Tol = DEFAULT_TOL, both_directions: bool = True) -> PreserverVerdict:
    """Sampled test of ``a <> b  =>  T(a) <> T(b)`` and, optionally, the converse.

    The converse is tested twice: unordered pairs must map to unordered
    pairs, and generated ordered pairs on the image side must pull back
    through ``T^-1`` to ordered pairs. Any counterexample is re-verified
    before it is returned.
    """
    n = _dim_of(T, n)
    if both_directions and not (isinstance(T, LinearMap) and T.is_invertible(tol)):
        raise ValueError("backward preservation needs an invertible LinearMap")
    rng = rng_for("preserver-sweep", n, seed)
    count = 0

    for a, b in _informative_pairs(n, pairs, rng, tol):
        count += 1
        if not leq_diamond(T(a), T(b), tol).holds and leq_diamond(a, b, tol).holds:
            return PreserverVerdict(False, None, count, (a, b), "forward")
    if not both_directions:
        return PreserverVerdict(True, None, count)

    Tinv = T.inverse(tol)
    image_pairs = _informative_pairs(n, pairs, rng, tol)
    for c, d in image_pairs:
        a, b = _unrelated_pair(n, rng)
        count += 1
        if not leq_diamond(a, b, tol).holds and leq_diamond(T(a), T(b), tol).holds:
            return PreserverVerdict(True, False, count, (a, b), "backward-unrelated")
        count += 1
        a, b = Tinv(c), Tinv(d)
        if not leq_diamond(a, b, tol).holds and leq_diamond(T(a), T(b), tol).holds:
            return PreserverVerdict(True, False, count, (a, b), "backward-pullback")
    return PreserverVerdict(True, True, count)


@dataclass(frozen=True, eq=False)
class DecompositionReport:
    """``T = h S`` with ``h h* = h* h = lam 1`` and ``S`` a *-(anti-)automorphism.

    ``lam`` is the scalar of ``h h*``; the canonical form is
    ``T(a) = scale * U a V`` (or with ``a^T``) where ``scale = sqrt(lam)``,
    ``S(a) = W a W*`` (or ``W a^T W*``), ``U = (h / scale) W`` and
    ``V = W*``. ``U`` is gauged so that its first nonzero entry in the first
    column is real positive.
    """

    h: np.ndarray
    lam: float
    unitary_part: np.ndarray | None
    flavor: str
    residuals: dict = field(default_factory=dict)
    U: np.ndarray | None = None
    V: np.ndarray | None = None

    @property
    def scale(self) -> float:
        return float(np.sqrt(self.lam)) if self.lam > 0 else 0.0

    def canonical(self) -> LinearMap:
        if self.flavor == "neither":
            raise ValueError("map has no canonical form")
        tag = CanonicalTag(self.scale, self.U, self.V, self.flavor == "anti_iso")
        return LinearMap(self.U.shape[0], tag.supermatrix())

    def lines(self) -> list:
        out = [f"flavor: {self.flavor}", f"lambda: {self.lam:.12g}", f"scale: {self.scale:.12g}"]
        out += [f"residual.{k}: {v:.6e}" for k, v in self.residuals.items()]
        return out


def _gauge(U, V):
    col = U[:, 0]
    k = int(np.argmax(np.abs(col) > 1e-8 * np.max(np.abs(col))))
    ph = col[k] / abs(col[k])
    return U * np.conj(ph), V * ph


def decompose_preserver(T: LinearMap, tol: Tol = DEFAULT_TOL) -> DecompositionReport:
    """Recover ``h``, ``lam``, the flavor and the unitaries of a preserver.

    Intended for surjective maps that preserve the diamond order in both
    directions; for other invertible maps the report comes back with
    ``flavor == "neither"`` and the residuals that rule the form out.
    """
    if not T.is_invertible(tol):
        raise ValueError("decomposition needs an invertible (surjective) map")
    n = T.dim
    eye = np.eye(n, dtype=np.complex128)
    h = T(eye)
    hh, h_h = h @ adj(h), adj(h) @ h
    lam = float(np.mean(np.real(np.diag(hh))))
    res = {
        "hh_scalar": fro(hh - lam * eye) / max(lam, 1e-300),
        "h_h_scalar": fro(h_h - lam * eye) / max(lam, 1e-300),
    }
    thr = tol.threshold(1.0) * n
    neither = DecompositionReport(h, lam, None, "neither", res)
    if lam <= tol.atol or res["hh_scalar"] > thr or res["h_h_scalar"] > thr:
        return neither
    hinv = np.linalg.inv(h)
    basis = {(i, j): unit(n, i, j) for i in range(n) for j in range(n)}
    S = {k: hinv @ T(e) for k, e in basis.items()}

    iso = anti = star = 0.0
    for (i, j), sij in S.items():
        star = max(star, fro(S[(j, i)] - adj(sij)))
        for (k, l), skl in S.items():
            prod = S[(i, l)] if j == k else 0.0
            iso = max(iso, fro(sij @ skl - prod))
            anti = max(anti, fro(skl @ sij - prod))
    res.update(iso=iso, anti=anti, star=star)
    if star > thr or min(iso, anti) > thr:
        return neither
    flavor = "iso" if iso <= anti else "anti_iso"

    # S(E_11) = w1 w1*; then w_i = S(E_i1) w1 (iso) or S(E_1i) w1 (anti)
    s11 = S[(0, 0)]
    v = s11[:, int(np.argmax(np.linalg.norm(s11, axis=0)))]
    w1 = v / np.linalg.norm(v)
    cols = [(S[(i, 0)] if flavor == "iso" else S[(0, i)]) @ w1 for i in range(n)]
    W = np.column_stack(cols)
    scale = np.sqrt(lam)
    U, V = _gauge((h / scale) @ W, adj(W))
    rep = DecompositionReport(h, lam, h / scale, flavor, res, U, V)
    res["unitary_W"] = fro(adj(W) @ W - eye)
    res["reconstruction"] = fro(rep.canonical().super - T.super) / fro(T.super)
    return rep


def rro_check(T, n: int | None = None, tol: Tol = DEFAULT_TOL, seed: int = 0,
              pairs: int = 200) -> bool:
    """A forward diamond preserver sending ``1`` to a projection is a Jordan *-homomorphism.

    Checks the hypotheses (``T(1)`` a projection, sampled forward
    preservation) and raises :class:`Inapplicable` when they fail; returns
    :func:`jordan_star_check`, which must then hold; ``False`` flags a violated implication.

    When ``T(1)`` is a partial isometry but not a projection, the unitary
    variant applies: if ``T`` hits an invertible element among sampled
    images, ``T(1)`` must be unitary and the check runs on
    ``x -> T(1)* T(x)``.
    """
    n = _dim_of(T, n)
    eye = np.eye(n, dtype=np.complex128)
    h = T(eye)
    hd = h.dense() if isinstance(h, BlockMat) else h
    if is_projection(h, tol):
        target = T
    elif approx_eq(hd @ adj(hd) @ hd, hd, tol):
        hits = any(rank(T(a) if not isinstance(T(a), BlockMat) else T(a).dense(), tol)
                   == hd.shape[0] for a in _test_elements(n, 16, seed))
        if not hits:
            raise Inapplicable("T(1) is a partial isometry but no sampled image is invertible")
        if not approx_eq(adj(hd) @ hd, np.eye(hd.shape[0]), tol):
            raise AssertionError("T(1) should be unitary under the hypotheses")
        hs = adj(h) if not isinstance(h, BlockMat) else h.adjoint()

        def target(a):
            return hs @ T(a)
    else:
        raise Inapplicable("T(1) is neither a projection nor a partial isometry")
    if not preserves_diamond(T, n, pairs, seed, tol, both_directions=False).forward_ok:
        raise Inapplicable("T does not preserve the diamond order")
    return jordan_star_check(target, n, seed=seed, tol=tol)
