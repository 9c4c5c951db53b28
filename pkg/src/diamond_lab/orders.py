"""Decision procedures for partial orders and pre-orders on matrix algebras.

Conventions
-----------
Every predicate returns an :class:`OrderReport` carrying the verdict, the
residual of each defining identity, the threshold it was compared with,
and (when the relation holds) the witnesses that certify it. Range
inclusions ``aA <= bA`` and ``Aa <= Ab`` are decided through projector
residuals ``||b b^+ a - a||`` and ``||a b^+ b - a||``; the residual matrices
double as the witnesses ``a = b y`` with ``y = b^+ a`` and ``a = x b`` with
``x = a b^+``.

Thresholds are ``atol + rtol * scale`` where ``scale`` is a norm product
of the same polynomial degree as the identity being tested.

Arguments may be dense arrays or :class:`~diamond_lab.matcore.BlockMat`
elements of a block-diagonal algebra; for the latter the verdict is the
conjunction of the blockwise verdicts.
"""

from __future__ import annotations

import enum
import functools
import warnings
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .geninv import group_inverse, pinv
from .matcore import (DEFAULT_TOL, BlockMat, Tol, _check_same_shape, adj, as_cmat,
                      fro, ginibre, rank, rng_for)

__all__ = [
    "OrderKind",
    "OrderReport",
    "leq",
    "leq_space",
    "leq_diamond",
    "leq_diamond_dagger",
    "leq_star",
    "leq_left_star",
    "leq_right_star",
    "leq_minus",
    "minus_witness",
    "leq_sharp",
    "orthogonal",
    "diamond_extension",
    "gen_diamond_pair",
    "gen_minus_pair",
    "diamond_below",
    "HasseDiagram",
    "hasse",
]


class OrderKind(str, enum.Enum):
    SPACE = "space"
    DIAMOND = "diamond"
    STAR = "star"
    LEFT_STAR = "left_star"
    RIGHT_STAR = "right_star"
    MINUS = "minus"
    SHARP = "sharp"

    @property
    def is_preorder_only(self) -> bool:
        return self is OrderKind.SPACE


@dataclass(frozen=True)
class OrderReport:
    kind: OrderKind
    holds: bool
    residuals: dict = field(default_factory=dict)
    thresholds: dict = field(default_factory=dict)
    witnesses: dict | None = None
    applicable: bool = True
    note: str = ""

    def __bool__(self):
        return self.holds

    def lines(self) -> list:
        """``key: value`` lines for line-oriented reports."""
        if not self.applicable:
            verdict = "inapplicable"
        else:
            verdict = "holds" if self.holds else "fails"
        out = [f"kind: {self.kind.value}", f"verdict: {verdict}"]
        for k, v in self.residuals.items():
            out.append(f"residual.{k}: {v:.6e} (threshold {self.thresholds.get(k, float('nan')):.6e})")
        if self.note:
            out.append(f"note: {self.note}")
        return out


def _pair(a, b, square=False):
    a, b = as_cmat(a, "a"), as_cmat(b, "b")
    _check_same_shape(a, b)
    if square and a.shape[0] != a.shape[1]:
        raise ValueError(f"expected square matrices, got {a.shape}")
    return a, b


def _blockwise(kind: OrderKind):
    """Lift a dense predicate to BlockMat arguments by blockwise conjunction."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(a, b, tol: Tol = DEFAULT_TOL, **kw):
            if not (isinstance(a, BlockMat) or isinstance(b, BlockMat)):
                return fn(a, b, tol, **kw)
            if not (isinstance(a, BlockMat) and isinstance(b, BlockMat)):
                raise ValueError("cannot compare BlockMat with a dense matrix")
            a._check(b)
            reps = [fn(x, y, tol, **kw) for x, y in zip(a.blocks, b.blocks)]
            res, thr = {}, {}
            for k, r in enumerate(reps):
                res.update({f"block{k}.{n}": v for n, v in r.residuals.items()})
                thr.update({f"block{k}.{n}": v for n, v in r.thresholds.items()})
            wit = None
            if all(r.witnesses for r in reps):
                names = set.intersection(*(set(r.witnesses) for r in reps))
                wit = {n: BlockMat(r.witnesses[n] for r in reps) for n in sorted(names)}
            applicable = all(r.applicable for r in reps)
            return OrderReport(kind, applicable and all(r.holds for r in reps), res, thr,
                               wit, applicable, "; ".join(r.note for r in reps if r.note))
        return wrapper
    return deco


def _space_parts(a, b, tol):
    g = pinv(b, tol)
    y = g @ a
    x = a @ g
    thr = tol.threshold(fro(a))
    res = {"col_range": fro(b @ y - a), "row_range": fro(x @ b - a)}
    return res, {"col_range": thr, "row_range": thr}, {"x": x, "y": y}


def _verdict(kind, res, thr, wit=None, note=""):
    holds = all(res[k] <= thr[k] for k in res)
    return OrderReport(kind, holds, res, thr, wit if holds else None, True, note)


@_blockwise(OrderKind.SPACE)
def leq_space(a, b, tol: Tol = DEFAULT_TOL) -> OrderReport:
    """Space pre-order: ``aA <= bA`` and ``Aa <= Ab``."""
    a, b = _pair(a, b, square=True)
    res, thr, wit = _space_parts(a, b, tol)
    return _verdict(OrderKind.SPACE, res, thr, wit)


@_blockwise(OrderKind.DIAMOND)
def leq_diamond(a, b, tol: Tol = DEFAULT_TOL) -> OrderReport:
    """Diamond order: space pre-order plus ``a a* a = a b* a``."""
    a, b = _pair(a, b, square=True)
    res, thr, wit = _space_parts(a, b, tol)
    res["cubic"] = fro(a @ adj(a) @ a - a @ adj(b) @ a)
    thr["cubic"] = tol.threshold(fro(a) ** 3)
    return _verdict(OrderKind.DIAMOND, res, thr, wit)


@_blockwise(OrderKind.DIAMOND)
def leq_diamond_dagger(a, b, tol: Tol = DEFAULT_TOL) -> OrderReport:
    """Diamond order through the pseudoinverse: ``a <=sp b`` and ``a^+ b a^+ = a^+``."""
    a, b = _pair(a, b, square=True)
    res, thr, wit = _space_parts(a, b, tol)
    ga = pinv(a, tol)
    res["dagger"] = fro(ga @ b @ ga - ga)
    thr["dagger"] = tol.threshold(fro(ga))
    return _verdict(OrderKind.DIAMOND, res, thr, wit, note="dagger route")


def _star_left_identity(a, b, tol):
    # a* a = a* b
    return fro(adj(a) @ a - adj(a) @ b), tol.threshold(fro(a) * max(fro(a), fro(b)))


def _star_right_identity(a, b, tol):
    # a a* = b a*
    return fro(a @ adj(a) - b @ adj(a)), tol.threshold(fro(a) * max(fro(a), fro(b)))


@_blockwise(OrderKind.STAR)
def leq_star(a, b, tol: Tol = DEFAULT_TOL) -> OrderReport:
    """Star order: ``a* a = a* b`` and ``a a* = b a*``."""
    a, b = _pair(a, b)
    r1, t1 = _star_left_identity(a, b, tol)
    r2, t2 = _star_right_identity(a, b, tol)
    return _verdict(OrderKind.STAR, {"left": r1, "right": r2}, {"left": t1, "right": t2})


@_blockwise(OrderKind.LEFT_STAR)
def leq_left_star(a, b, tol: Tol = DEFAULT_TOL) -> OrderReport:
    """Left-star order: ``a* a = a* b`` and ``Im a <= Im b``."""
    a, b = _pair(a, b)
    r1, t1 = _star_left_identity(a, b, tol)
    r2 = fro(b @ pinv(b, tol) @ a - a)
    return _verdict(OrderKind.LEFT_STAR, {"left": r1, "col_range": r2},
                    {"left": t1, "col_range": tol.threshold(fro(a))})


@_blockwise(OrderKind.RIGHT_STAR)
def leq_right_star(a, b, tol: Tol = DEFAULT_TOL) -> OrderReport:
    """Right-star order: ``a a* = b a*`` and ``Im a* <= Im b*``."""
    a, b = _pair(a, b)
    r1, t1 = _star_right_identity(a, b, tol)
    r2 = fro(a @ pinv(b, tol) @ b - a)
    return _verdict(OrderKind.RIGHT_STAR, {"right": r1, "row_range": r2},
                    {"right": t1, "row_range": tol.threshold(fro(a))})


def _kron_term(x, y):
    # vec(x v y) = (y^T kron x) vec(v), column-major vec
    return np.kron(y.T, x)


def _vec(m):
    return m.reshape(-1, order="F")


def minus_witness(a, b, tol: Tol = DEFAULT_TOL):
    """Inner inverse ``g`` of ``b`` with ``a = a g b = b g a = a g a``, or ``None``.

    Searches the affine family ``g = b^+ + v - b^+ b v b b^+`` for a
    parameter ``v`` by linear least squares and accepts the candidate when
    all three identities hold within ``atol + rtol * ||a||``.
    """
    a, b = _pair(a, b)
    g = pinv(b, tol)
    thr = tol.threshold(fro(a))

    def accept(gm):
        return (fro(a @ gm @ b - a) <= thr and fro(b @ gm @ a - a) <= thr
                and fro(a @ gm @ a - a) <= thr)

    if accept(g):
        # v = 0 already works; least squares on a rounding-noise right-hand
        # side would only add an arbitrary large component
        return g
    P, Q = g @ b, b @ g
    m, n = b.shape
    Im, In = np.eye(m), np.eye(n)
    # a g b = aP + a(I-P) v b
    # b g a = Qa + b v (I-Q) a
    # a g a = a b^+ a + a v a - a P v Q a
    lhs = np.vstack([
        _kron_term(a @ (In - P), b),
        _kron_term(b, (Im - Q) @ a),
        _kron_term(a, a) - _kron_term(a @ P, Q @ a),
    ])
    rhs = np.concatenate([
        _vec(a - a @ P),
        _vec(a - Q @ a),
        _vec(a - a @ g @ a),
    ])
    sol = np.linalg.lstsq(lhs, rhs, rcond=None)[0]
    v = sol.reshape((n, m), order="F")
    gm = g + v - P @ v @ Q
    return gm if accept(gm) else None


@_blockwise(OrderKind.MINUS)
def leq_minus(a, b, tol: Tol = DEFAULT_TOL, witness: bool = True) -> OrderReport:
    """Minus (Hartwig) order by rank subtractivity ``rank(b - a) = rank(b) - rank(a)``.

    When it holds and ``witness`` is set, the inner-inverse witness from
    :func:`minus_witness` is attached as ``"b_minus"`` if one is found.
    """
    a, b = _pair(a, b)
    rb, ra, rd = rank(b, tol), rank(a, tol), rank(b - a, tol)
    defect = float(abs(rd - (rb - ra)))
    rep = _verdict(OrderKind.MINUS, {"rank_defect": defect}, {"rank_defect": 0.0},
                   note=f"rank(b-a)={rd}, rank(b)={rb}, rank(a)={ra}")
    if rep.holds and witness:
        gm = minus_witness(a, b, tol)
        if gm is not None:
            rep = OrderReport(rep.kind, True, rep.residuals, rep.thresholds, {"b_minus": gm},
                              True, rep.note)
    return rep


@_blockwise(OrderKind.SHARP)
def leq_sharp(a, b, tol: Tol = DEFAULT_TOL) -> OrderReport:
    """Sharp (Mitra) order ``a# a = a# b`` and ``a a# = b a#``.

    Inapplicable unless both arguments are group invertible.
    """
    a, b = _pair(a, b, square=True)
    ga = group_inverse(a, tol)
    if ga is None or group_inverse(b, tol) is None:
        which = "a" if ga is None else "b"
        return OrderReport(OrderKind.SHARP, False, {}, {}, None, False,
                           f"{which} has no group inverse")
    scale = fro(ga) * max(fro(a), fro(b))
    res = {"left": fro(ga @ a - ga @ b), "right": fro(a @ ga - b @ ga)}
    thr = {"left": tol.threshold(scale), "right": tol.threshold(scale)}
    return _verdict(OrderKind.SHARP, res, thr, {"a_sharp": ga})


_DISPATCH = {
    OrderKind.SPACE: leq_space,
    OrderKind.DIAMOND: leq_diamond,
    OrderKind.STAR: leq_star,
    OrderKind.LEFT_STAR: leq_left_star,
    OrderKind.RIGHT_STAR: leq_right_star,
    OrderKind.MINUS: leq_minus,
    OrderKind.SHARP: leq_sharp,
}


def leq(kind, a, b, tol: Tol = DEFAULT_TOL) -> OrderReport:
    """Dispatch on an :class:`OrderKind` or its string value."""
    return _DISPATCH[OrderKind(kind)](a, b, tol)


def orthogonal(a, b, tol: Tol = DEFAULT_TOL) -> bool:
    """``a b* = 0`` and ``b* a = 0``."""
    if isinstance(a, BlockMat) or isinstance(b, BlockMat):
        a._check(b)
        return all(orthogonal(x, y, tol) for x, y in zip(a.blocks, b.blocks))
    a, b = _pair(a, b)
    thr = tol.threshold(fro(a) * fro(b))
    return fro(a @ adj(b)) <= thr and fro(adj(b) @ a) <= thr


# ------------------------------------------------------------- generators

def diamond_extension(a, x, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """``a + (1 - a a^+) x (1 - a^+ a)``, which always lies diamond-above ``a``."""
    a, x = _pair(a, x, square=True)
    g = pinv(a, tol)
    n = a.shape[0]
    return a + (np.eye(n) - a @ g) @ x @ (np.eye(n) - g @ a)


def gen_minus_pair(n: int, seed: int, rng=None):
    """Random ``(c, d)`` with ``c <=- d`` built by rank additivity.

    ``c = X Y`` and ``d = X Y + Z W`` with ``[X Z]`` and ``[Y; W]`` of full
    rank ``r1 + r2 <= n`` (almost surely, for Gaussian factors).
    """
    rng = rng_for("minus-pair", n, seed) if rng is None else rng
    total = int(rng.integers(0, n + 1))
    r1 = int(rng.integers(0, total + 1))
    r2 = total - r1
    X, Y = ginibre(rng, n, r1), ginibre(rng, r1, n)
    Z, W = ginibre(rng, n, r2), ginibre(rng, r2, n)
    c = X @ Y
    return c, c + Z @ W


def _random_rank_element(rng, n):
    r = int(rng.integers(0, n + 1))
    return ginibre(rng, n, r) @ ginibre(rng, r, n)


def gen_diamond_pair(n: int, seed: int, route: int | None = None, tol: Tol = DEFAULT_TOL):
    """Random pair ``(a, b)`` with ``a`` diamond-below ``b``.

    Route 0 (even seeds) extends a random element of random rank by
    :func:`diamond_extension`. Route 1 (odd seeds) takes the pseudoinverses
    of a minus-ordered pair, using that ``a`` is diamond-below ``b``
    exactly when ``a^+ <=- b^+``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    route = (seed & 1) if route is None else route
    rng = rng_for("diamond-pair", n, route, seed)
    if route == 0:
        a = _random_rank_element(rng, n)
        return a, diamond_extension(a, ginibre(rng, n), tol)
    if route == 1:
        c, d = gen_minus_pair(n, seed, rng=rng)
        return pinv(c, tol), pinv(d, tol)
    raise ValueError(f"unknown route {route!r}")


def diamond_below(b, seed: int, tol: Tol = DEFAULT_TOL) -> np.ndarray:
    """Random ``a`` diamond-below ``b``.

    Takes a full-rank factorisation ``b^+ = F G`` and returns the
    pseudoinverse of a partial product ``F[:, :k] G[:k]``, which is
    minus-below ``b^+``.
    """
    b = as_cmat(b)
    gb = pinv(b, tol)
    r = rank(gb, tol)
    rng = rng_for("diamond-below", b.shape[0], seed)
    if r == 0:
        return np.zeros_like(b)
    # random invertible mixing keeps the factorisation full rank
    u, s, vh = np.linalg.svd(gb)
    F = u[:, :r] * s[:r]
    G = vh[:r]
    M = ginibre(rng, r) + 2 * np.eye(r)
    F, G = F @ M, np.linalg.solve(M, G)
    k = int(rng.integers(0, r + 1))
    return pinv(F[:, :k] @ G[:k], tol)


# ------------------------------------------------------------------ Hasse

@dataclass(frozen=True)
class HasseDiagram:
    """Cover relation of a finite (pre)ordered set.

    ``classes`` lists the equivalence classes (mutually related elements
    collapsed together); each class is represented by its smallest index,
    and ``edges`` are cover pairs ``(i, j)`` of representatives meaning
    element ``i`` lies below element ``j``.
    """

    edges: list
    classes: list
    excluded: list

    def to_dot(self, names=None) -> str:
        def label(i):
            return str(i) if names is None else str(names[i])

        lines = ["digraph hasse {", "  rankdir=BT;"]
        for cls in self.classes:
            text = ", ".join(label(i) for i in cls).replace('"', r'\"')
            lines.append(f'  n{cls[0]} [label="{text}"];')
        for i, j in self.edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def hasse(elements, kind, tol: Tol = DEFAULT_TOL) -> HasseDiagram:
    """Transitive reduction of ``kind`` restricted to ``elements``."""
    kind = OrderKind(kind)
    elems = list(elements)
    shapes = {e.shape for e in elems}
    if len(shapes) > 1:
        raise ValueError(f"elements have mixed shapes {sorted(shapes)}")
    pred = _DISPATCH[kind]
    excluded = []
    if kind is OrderKind.SHARP:
        for i, e in enumerate(elems):
            if group_inverse(e, tol) is None:
                warnings.warn(f"element {i} has no group inverse; excluded from sharp order")
                excluded.append(i)
    live = [i for i in range(len(elems)) if i not in excluded]
    g = nx.DiGraph()
    g.add_nodes_from(live)
    for i in live:
        for j in live:
            if i != j and pred(elems[i], elems[j], tol).holds:
                g.add_edge(i, j)
    cond = nx.condensation(g)
    members = {c: sorted(cond.nodes[c]["members"]) for c in cond.nodes}
    red = nx.transitive_reduction(cond)
    classes = sorted(members.values())
    edges = sorted((members[u][0], members[v][0]) for u, v in red.edges)
    return HasseDiagram(edges, classes, excluded)
