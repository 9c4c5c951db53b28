"""Seeded property suites.

Each suite returns a list of :class:`CheckResult`. Trial counts scale with
``pairs``; at ``pairs=1000`` they are the budgets the acceptance tests
pin (1000 pairs per size for the equivalence sweeps, 500 for the
preserver sweeps, 200 two-way pairs for antisymmetry, and so on).

Output is a pure function of ``(suite, ns, pairs, seed, tol)``: no
timings, no unordered iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import exact_leq, to_exact
from .geninv import group_inverse, inner_inverse, is_ep, penrose_residuals, pinv
from .matcore import (DEFAULT_TOL, BlockMat, Tol, adj, approx_eq, fro, ginibre, is_projection,
                      rank, rng_for, sample, svd, unit)
from .orders import (diamond_below, diamond_extension, gen_diamond_pair, gen_minus_pair, leq,
                     leq_diamond, leq_diamond_dagger, leq_left_star, leq_minus, leq_right_star,
                     leq_star, minus_witness, orthogonal)
from .preservers import (LinearMap, decompose_preserver, jordan_embedding, jordan_star_check,
                         left_multiplication, make_canonical, mp_preservation_check,
                         preserves_diamond)
from .structure import (invertibility_probe, is_maximal_diamond, maximality_witness,
                        minimal_below, projection_characterization, scalar_unitary_defect,
                        unitary_mult_preserves)

__all__ = [
    "EXAMPLE_A",
    "EXAMPLE_U",
    "CheckResult",
    "SUITES",
    "run_suites",
    "format_table",
    "mixed_pair",
    "two_way_pairs",
    "oracle_grid",
]

EXAMPLE_A = np.array([[1, 0], [0, 0]], dtype=np.complex128)
EXAMPLE_U = np.array([[0, 1], [0, 1]], dtype=np.complex128) / np.sqrt(2)


@dataclass
class CheckResult:
    suite: str
    name: str
    trials: int = 0
    violations: int = 0
    counterexample: str | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.trials > 0

    def record(self, ok: bool, where: str = "") -> None:
        self.trials += 1
        if not ok:
            self.violations += 1
            if self.counterexample is None:
                self.counterexample = where


def _seeds(rng, count):
    return [int(s) for s in rng.integers(0, 2**63, size=count)]


def _n_cycle(ns, k):
    return ns[k % len(ns)]


def _random_rank(n, seed):
    rng = rng_for("random-rank", n, seed)
    return sample("rank", n, seed, r=int(rng.integers(0, n + 1)))


def mixed_pair(n: int, seed: int):
    """A pair drawn from a mix of ordered and unordered families, with its family label."""
    rng = rng_for("mixed-pair", n, seed)
    k = seed % 8
    if k in (0, 1):
        a, b = gen_diamond_pair(n, seed)
        return a, b, f"diamond-route{seed & 1}"
    if k == 2:
        # SVD truncation gives a star pair
        b = ginibre(rng, n)
        f = svd(b)
        keep = rng.random(n) < 0.5
        a = (f.left[:, keep] * f.sigma[keep]) @ adj(f.right[:, keep])
        return a, b, "star-truncation"
    if k == 3:
        c, d = gen_minus_pair(n, seed)
        return c, d, "minus-pair"
    if k == 4:
        a, b = gen_diamond_pair(n, seed)
        return a, b + 1e-3 * ginibre(rng, n), "perturbed-diamond"
    if k == 5:
        a = _random_rank(n, seed)
        return a, 2 * a, "scaled"
    if k == 6:
        return _random_rank(n, seed), _random_rank(n, seed + 1), "random-rank"
    return ginibre(rng, n), ginibre(rng, n), "ginibre"


# ------------------------------------------------------------------ orders

def _example_checks(tol):
    a, u = EXAMPLE_A, EXAMPLE_U
    out = []
    c = CheckResult("orders", "example: ||a u* a|| <= 1e-12")
    c.record(fro(a @ adj(u) @ a) <= 1e-12, "a u* a != 0")
    out.append(c)
    c = CheckResult("orders", "example: a <> a+u")
    c.record(leq_diamond(a, a + u, tol).holds, "diamond fails")
    c.record(leq_diamond_dagger(a, a + u, tol).holds, "dagger route fails")
    out.append(c)
    c = CheckResult("orders", "example: a, u not orthogonal")
    c.record(not orthogonal(a, u, tol), "orthogonal")
    out.append(c)
    c = CheckResult("orders", "example: a not star-below a+u")
    c.record(not leq_star(a, a + u, tol).holds, "star holds")
    out.append(c)
    return out


def two_way_pairs(ns, count, seed, tol: Tol = DEFAULT_TOL):
    """Pairs that are diamond-related in both directions at ``tol``.

    Built by perturbing random elements inside their own row and column
    spaces at scales from 1e-16 to 1e-7 and keeping the two-way survivors.
    """
    rng = rng_for("two-way", seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        n = _n_cycle(ns, attempts)
        attempts += 1
        a = _random_rank(n, int(rng.integers(0, 2**63)))
        g = pinv(a, tol)
        eps = 10.0 ** rng.uniform(-16, -7)
        b = a + eps * (a @ g) @ ginibre(rng, n) @ (g @ a)
        if leq_diamond(a, b, tol).holds and leq_diamond(b, a, tol).holds:
            out.append((a, b))
    return out


def partial_order_checks(ns, pairs, seed, tol):
    out = []
    rng = rng_for("orders", "reflexive", seed)
    c = CheckResult("orders", "diamond reflexivity")
    kinds = ("ginibre", "unitary", "projection", "partial_isometry", "rank", "hermitian")
    for k, s in enumerate(_seeds(rng, pairs)):
        n = _n_cycle(ns, k)
        kind = kinds[k % len(kinds)]
        r = int(s % (n + 1)) if kind in ("projection", "partial_isometry", "rank") else None
        a = sample(kind, n, s, r=r)
        c.record(leq_diamond(a, a, tol).holds, f"n={n} kind={kind} seed={s}")
    out.append(c)

    rng = rng_for("orders", "transitive", seed)
    c = CheckResult("orders", "diamond transitivity on chains")
    for k, s in enumerate(_seeds(rng, pairs)):
        n = _n_cycle(ns, k)
        a, b = gen_diamond_pair(n, s, tol=tol)
        if k % 2 == 0:
            lo, mid, hi = a, b, diamond_extension(b, ginibre(rng, n), tol)
        else:
            lo, mid, hi = diamond_below(a, s, tol), a, b
        chain_ok = leq_diamond(lo, mid, tol).holds and leq_diamond(mid, hi, tol).holds
        c.record(chain_ok and leq_diamond(lo, hi, tol).holds, f"n={n} seed={s}")
    out.append(c)

    c = CheckResult("orders", "diamond antisymmetry bound (100 tol)")
    t = max(tol.atol, tol.rtol)
    pairs_2w = two_way_pairs(ns, max(200, pairs // 5), seed, tol)
    for k, (a, b) in enumerate(pairs_2w):
        c.record(fro(a - b) <= 100 * t * max(1.0, fro(b)), f"pair {k}: ||a-b||={fro(a - b):.3e}")
    if len(pairs_2w) < max(200, pairs // 5):
        c.violations += 1
        c.counterexample = c.counterexample or "could not construct enough two-way pairs"
    out.append(c)
    return out


def equivalence_checks(ns, pairs, seed, tol):
    names = [
        "diamond <=> dagger route",
        "diamond(a,b) <=> minus(a+,b+)",
        "minus rank route <=> witness route",
        "star <=> left-star and right-star",
        "star => diamond",
        "generator pairs are diamond-ordered",
        "orthogonal b => a <> a+b",
    ]
    checks = {nm: CheckResult("orders", nm) for nm in names}
    holds = 0
    for n in ns:
        rng = rng_for("orders", "equivalence", n, seed)
        for s in _seeds(rng, pairs):
            a, b, label = mixed_pair(n, s)
            where = f"n={n} seed={s} family={label}"
            d = leq_diamond(a, b, tol).holds
            holds += d
            checks[names[0]].record(d == leq_diamond_dagger(a, b, tol).holds, where)
            checks[names[1]].record(d == leq_minus(pinv(a, tol), pinv(b, tol), tol,
                                                   witness=False).holds, where)
            m = leq_minus(a, b, tol, witness=False).holds
            checks[names[2]].record(m == (minus_witness(a, b, tol) is not None), where)
            st = leq_star(a, b, tol).holds
            lr = leq_left_star(a, b, tol).holds and leq_right_star(a, b, tol).holds
            checks[names[3]].record(st == lr, where)
            if st:
                checks[names[4]].record(d, where)
            if label.startswith("diamond-route"):
                checks[names[5]].record(d, where)
            if label == "diamond-route0":
                # route 0 adds an element orthogonal to a
                ext = b - a
                if orthogonal(a, ext, tol):
                    checks[names[6]].record(d, where)
    checks[names[0]].detail = f"{holds} ordered pairs"
    return list(checks.values())


def block_checks(ns, pairs, seed, tol):
    c = CheckResult("orders", "blockwise lifting of verdicts")
    rng = rng_for("orders", "blocks", seed)
    kinds = ("space", "diamond", "star", "left_star", "right_star", "minus", "sharp")
    for k, s in enumerate(_seeds(rng, max(1, pairs // 5))):
        n1, n2 = _n_cycle(ns, k), _n_cycle(ns, k + 1)
        a1, b1, _ = mixed_pair(n1, s)
        a2, b2, _ = mixed_pair(n2, s + 1)
        A, B = BlockMat([a1, a2]), BlockMat([b1, b2])
        for kind in kinds:
            whole = leq(kind, A, B, tol)
            parts = [leq(kind, a1, b1, tol), leq(kind, a2, b2, tol)]
            ok = whole.holds == all(p.holds for p in parts)
            if whole.applicable:
                ok = ok and whole.holds == leq(kind, A.dense(), B.dense(), tol).holds
            c.record(ok, f"kind={kind} sizes=({n1},{n2}) seed={s}")
    return [c]


def suite_orders(ns, pairs, seed, tol=DEFAULT_TOL):
    return (_example_checks(tol) + partial_order_checks(ns, pairs, seed, tol)
            + equivalence_checks(ns, pairs, seed, tol) + block_checks(ns, pairs, seed, tol))


# --------------------------------------------------------------- structure

def _non_projection(n, rng):
    """Idempotents that are not selfadjoint, Hermitians that are not idempotent,
    and scaled projections."""
    k = int(rng.integers(0, 3))
    r = int(rng.integers(1, n + 1))
    p = sample("projection", n, int(rng.integers(0, 2**63)), r=r)
    if k == 0 and r < n:
        s = np.eye(n) + ginibre(rng, n)
        return s @ p @ np.linalg.inv(s), "idempotent"
    if k == 1:
        return sample("hermitian", n, int(rng.integers(0, 2**63))), "hermitian"
    return float(rng.choice([0.5, 2.0, -1.0])) * p, "scaled projection"


def suite_structure(ns, pairs, seed, tol=DEFAULT_TOL):
    out = []
    rng = rng_for("structure", "minimal", seed)
    c = CheckResult("structure", "minimal_below is rank-one and diamond-below")
    for k, s in enumerate(_seeds(rng, max(1, pairs // 2))):
        n = _n_cycle(ns, k)
        a = sample("rank", n, s, r=1 + s % n)
        u = minimal_below(a, tol, s).matrix
        c.record(rank(u, tol) == 1 and leq_diamond(u, a, tol).holds, f"n={n} seed={s}")
    out.append(c)

    rng = rng_for("structure", "projections", seed)
    pos = CheckResult("structure", "projection characterization: projections")
    neg = CheckResult("structure", "projection characterization: non-projections")
    for k, s in enumerate(_seeds(rng, max(1, pairs // 2))):
        n = _n_cycle(ns, k)
        v = sample("unitary", n, s)
        r2 = 1 + s % n
        r1 = int(rng.integers(0, r2 + 1))
        p = v[:, :r1] @ adj(v[:, :r1])
        q = v[:, :r2] @ adj(v[:, :r2]) if k % 2 else None
        pos.record(projection_characterization(p, q, tol), f"n={n} seed={s} r1={r1} r2={r2}")
        x, label = _non_projection(n, rng)
        neg.record(not is_projection(x, tol) and not projection_characterization(x, q, tol),
                   f"n={n} seed={s} {label}")
    out += [pos, neg]

    rng = rng_for("structure", "probe", seed)
    probe = CheckResult("structure", "invertibility_probe agrees with rank")
    maxi = CheckResult("structure", "maximality witness for singular elements")
    for k, s in enumerate(_seeds(rng, pairs)):
        n = _n_cycle(ns, k)
        a = sample("rank", n, s, r=n if k % 2 else int(s % n)) if k % 3 else sample("ginibre", n, s)
        invertible = rank(a, tol) == n
        probe.record(invertibility_probe(a, tol).invertible == invertible, f"n={n} seed={s}")
        if not invertible:
            b = maximality_witness(a, tol, s)
            maxi.record(not is_maximal_diamond(a, tol) and b is not None
                        and leq_diamond(a, b, tol).holds
                        and not approx_eq(a, b, tol), f"n={n} seed={s}")
    out += [probe, maxi]

    rng = rng_for("structure", "unitary-mult", seed)
    pres = CheckResult("structure", "scaled unitaries preserve and have no defect")
    for k, s in enumerate(_seeds(rng, max(1, pairs // 50))):
        n = _n_cycle(ns, k)
        u = float(rng.uniform(0.2, 5.0)) * sample("unitary", n, s)
        gen = [gen_diamond_pair(n, s + j, tol=tol) for j in range(20)]
        ok = unitary_mult_preserves(u, gen, tol) and scalar_unitary_defect(u, tol, s).status == "no_defect"
        pres.record(ok, f"n={n} seed={s}")
    out.append(pres)

    defect = CheckResult("structure", "defect witness for non-scalar diagonal u")
    for k, s in enumerate(_seeds(rng, max(1, pairs // 50))):
        n = 2 + k % 2
        d = np.diag(rng.uniform(0.5, 2.0, size=n) * np.exp(1j * rng.uniform(0, 2 * np.pi, n)))
        if np.ptp(np.abs(np.diag(d))) < 0.05:
            d[0, 0] *= 2
        res = scalar_unitary_defect(d, tol, s)
        ok = res.status == "defect"
        if ok:
            _, a, b = res.witness
            ok = leq_diamond(a, b, tol).holds != leq_diamond(a @ d, b @ d, tol).holds
        defect.record(ok, f"n={n} seed={s} status={res.status}")
    out.append(defect)
    return out


# -------------------------------------------------------------- preservers

def _random_diag_multiplier(n, rng):
    mods = rng.uniform(0.5, 2.0, size=n)
    while np.ptp(mods) < 0.1:
        mods = rng.uniform(0.5, 2.0, size=n)
    return np.diag(mods * np.exp(1j * rng.uniform(0, 2 * np.pi, n)))


def suite_preservers(ns, pairs, seed, tol=DEFAULT_TOL):
    out = []
    rng = rng_for("preservers", "canonical", seed)
    sweep = max(1, pairs // 2)
    c = CheckResult("preservers", "canonical maps preserve both directions")
    for n in ns:
        for transpose in (False, True):
            for lam in (1.0, float(rng.uniform(0.3, 3.0))):
                s = int(rng.integers(0, 2**63))
                T = make_canonical(lam, sample("unitary", n, s), sample("unitary", n, s + 1),
                                   transpose, tol)
                v = preserves_diamond(T, n, sweep, s, tol)
                c.record(v.forward_ok and v.backward_ok is True,
                         f"n={n} transpose={transpose} lambda={lam:.4g} seed={s} {v.direction}")
    out.append(c)

    c = CheckResult("preservers", "decompose round-trip (1e-8)")
    for n in ns:
        for s in _seeds(rng, max(1, pairs // 20)):
            lam = float(rng.uniform(0.2, 5.0))
            U, V = sample("unitary", n, s), sample("unitary", n, s + 1)
            transpose = bool(s & 1)
            rep = decompose_preserver(make_canonical(lam, U, V, transpose, tol), tol)
            ok = rep.flavor == ("anti_iso" if transpose else "iso")
            if ok:
                pu = np.vdot(U, rep.U)
                pv = np.vdot(V, rep.V)
                ok = (abs(rep.scale - lam) <= 1e-8 * lam
                      and fro(rep.U - pu / abs(pu) * U) <= 1e-8 * np.sqrt(n)
                      and fro(rep.V - pv / abs(pv) * V) <= 1e-8 * np.sqrt(n)
                      and rep.residuals["reconstruction"] <= 1e-8)
            c.record(ok, f"n={n} seed={s} transpose={transpose}")
    out.append(c)

    c = CheckResult("preservers", "diagonal left-multipliers: verified counterexample")
    runs = max(1, pairs // 10)
    found = inconclusive = false_cert = 0
    for k, s in enumerate(_seeds(rng, runs)):
        n = _n_cycle(ns, k)
        D = _random_diag_multiplier(n, rng)
        v = preserves_diamond(left_multiplication(D), n, 50, s, tol, both_directions=False)
        if v.counterexample is None:
            inconclusive += 1
            continue
        a, b = v.counterexample
        if leq_diamond(a, b, tol).holds and not leq_diamond(D @ a, D @ b, tol).holds:
            found += 1
        else:
            false_cert += 1
    c.trials = runs
    c.violations = (0 if found >= 0.95 * runs else runs - found) + false_cert
    c.detail = f"found={found} inconclusive={inconclusive} unverified={false_cert}"
    if c.violations:
        c.counterexample = c.detail
    out.append(c)

    c = CheckResult("preservers", "non-preserver x -> x + E11 tr(x) is rejected")
    for n in ns:
        T = LinearMap.from_function(lambda x, n=n: x + unit(n, 0, 0) * np.trace(x), n)
        rep = decompose_preserver(T, tol)
        v = preserves_diamond(T, n, 50, seed, tol)
        c.record(rep.flavor == "neither" or not v, f"n={n}")
    out.append(c)
    return out


def suite_jordan(ns, pairs, seed, tol=DEFAULT_TOL):
    out = []
    c = CheckResult("jordan", "embedding is a Jordan *-homomorphism")
    m = CheckResult("jordan", "embedding preserves Moore-Penrose inverses")
    p = CheckResult("jordan", "embedding preserves diamond blockwise")
    neg = CheckResult("jordan", "x -> 2x fails the Jordan check")
    for n in ns:
        c.record(jordan_star_check(jordan_embedding, n, 50, seed, tol), f"n={n}")
        m.record(mp_preservation_check(jordan_embedding, n, 50, seed, tol), f"n={n}")
        rng = rng_for("jordan", n, seed)
        for s in _seeds(rng, max(1, pairs // 2)):
            a, b = gen_diamond_pair(n, s, tol=tol)
            A, B = jordan_embedding(a), jordan_embedding(b)
            rep = leq_diamond(A, B, tol)
            dense = leq_diamond(A.dense(), B.dense(), tol).holds
            p.record(rep.holds and dense, f"n={n} seed={s}")
        neg.record(not jordan_star_check(lambda x: 2 * x, n, 8, seed, tol), f"n={n}")
    return [c, m, p, neg]


# ------------------------------------------------------------------ oracle

def oracle_grid():
    """Fixed 2x2 grid with exactly representable entries.

    Diagonal, Jordan-block, projection, idempotent and rank-one elements,
    including the worked example scaled by sqrt 2 so that it is exact. All
    ordered pairs of the 16 elements (256 pairs).
    """
    h = 0.5
    elems = [
        [[0, 0], [0, 0]],
        [[1, 0], [0, 0]],
        [[0, 0], [0, 1]],
        [[1, 0], [0, 1]],
        [[2, 0], [0, 0]],
        [[1, 0], [0, 3]],
        [[-1, 0], [0, h]],
        [[0, 1], [0, 0]],
        [[1, 1], [0, 1]],
        [[2, 1], [0, 2]],
        [[h, h], [h, h]],
        [[h, -h], [-h, h]],
        [[1, 1], [0, 0]],
        [[1, 0], [1, 0]],
        [[1, 2], [2, 4]],
        [[0, 1], [0, 1]],
    ]
    mats = [np.array(e, dtype=np.complex128) for e in elems]
    return [(a, b) for a in mats for b in mats]


def suite_oracle(ns, pairs, seed, tol=DEFAULT_TOL):
    out = []
    kinds = ("space", "diamond", "star", "left_star", "right_star", "minus", "sharp")
    for kind in kinds:
        c = CheckResult("oracle", f"exact rational agreement: {kind}")
        for k, (a, b) in enumerate(oracle_grid()):
            num = leq(kind, a, b, tol)
            ex = exact_leq(kind, to_exact(a.real), to_exact(b.real))
            got = num.holds if num.applicable else None
            c.record(got == ex, f"pair {k}: numeric={got} exact={ex}")
        out.append(c)
    return out


# ----------------------------------------------------------------- runners

def suite_matcore(ns, pairs, seed, tol=DEFAULT_TOL):
    rng = rng_for("matcore", seed)
    uni = CheckResult("matcore", "unitary samples: ||u*u - I|| <= 1e-10 n")
    rk = CheckResult("matcore", "rank(a) = rank(a*) = rank(a a*)")
    ae = CheckResult("matcore", "approx_eq reflexive and symmetric")
    rec = CheckResult("matcore", "svd reconstruction <= 1e-12 sigma_max")
    blk = CheckResult("matcore", "BlockMat ops commute with block extraction")
    for k, s in enumerate(_seeds(rng, max(1, pairs // 5))):
        n = _n_cycle(ns, k)
        u = sample("unitary", n, s)
        uni.record(fro(adj(u) @ u - np.eye(n)) <= 1e-10 * n, f"n={n} seed={s}")
        a = sample("rank", n, s, r=int(s % (n + 1)))
        rk.record(rank(a, tol) == rank(adj(a), tol) == rank(a @ adj(a), tol), f"n={n} seed={s}")
        b = a + 1e-3 * sample("ginibre", n, s)
        ae.record(approx_eq(a, a, tol) and approx_eq(a, b, tol) == approx_eq(b, a, tol),
                  f"n={n} seed={s}")
        g = sample("ginibre", n, s)
        f = svd(g)
        rec.record(fro(f.reconstruct() - g) <= 1e-12 * f.sigma[0], f"n={n} seed={s}")
        x = BlockMat([g, a[:1, :1]])
        y = BlockMat([u, b[:1, :1]])
        ok = all(np.allclose(p, q) for p, q in zip((x @ y).blocks, (g @ u, a[:1, :1] @ b[:1, :1])))
        ok = ok and all(np.allclose(p, adj(q)) for p, q in zip(x.adjoint().blocks, x.blocks))
        blk.record(ok, f"n={n} seed={s}")
    return [uni, rk, ae, rec, blk]


def suite_geninv(ns, pairs, seed, tol=DEFAULT_TOL):
    rng = rng_for("geninv", seed)
    inv = CheckResult("geninv", "pinv(pinv(a)) = a")
    adj_c = CheckResult("geninv", "pinv(a*) = pinv(a)*")
    pen = CheckResult("geninv", "Penrose residuals of pinv <= 1e-10")
    grp = CheckResult("geninv", "group inverse: inner, outer, commuting; = pinv iff EP")
    inner = CheckResult("geninv", "inner_inverse: eq. 1 always, eq. 3/4 broken for v != 0")
    for k, s in enumerate(_seeds(rng, max(1, pairs // 5))):
        n = _n_cycle(ns, k)
        a = sample("rank", n, s, r=int(s % (n + 1)))
        g = pinv(a, tol)
        inv.record(fro(pinv(g, tol) - a) <= 1e-9 * max(1.0, fro(a)), f"n={n} seed={s}")
        adj_c.record(approx_eq(pinv(adj(a), tol), adj(g), tol), f"n={n} seed={s}")
        pen.record(max(penrose_residuals(a, g)) <= 1e-10, f"n={n} seed={s}")
        # normal samples: unitary conjugates of diagonal matrices
        u = sample("unitary", n, s)
        d = np.diag(ginibre(rng, 1, n)[0] * (rng.random(n) < 0.6))
        m = u @ d @ adj(u)
        gm = group_inverse(m, tol)
        ok = gm is not None and max(penrose_residuals(m, gm)[:2]) <= 1e-9
        ok = ok and fro(m @ gm - gm @ m) <= 1e-9 * max(1.0, fro(m) * fro(gm))
        ok = ok and is_ep(m, tol) and approx_eq(gm, pinv(m, tol), Tol(1e-8, 1e-8, tol.rank_rel))
        grp.record(ok, f"n={n} seed={s}")
        b = sample("rank", n, s + 1, r=max(1, n - 1))
        if n > 1:
            v = ginibre(rng, n)
            r = penrose_residuals(b, inner_inverse(b, v, tol))
            inner.record(r.r1 <= 1e-9 and max(r.r3, r.r4) > 0.01, f"n={n} seed={s}")
    return [inv, adj_c, pen, grp, inner]


SUITES = {
    "matcore": suite_matcore,
    "geninv": suite_geninv,
    "orders": suite_orders,
    "structure": suite_structure,
    "preservers": suite_preservers,
    "jordan": suite_jordan,
    "oracle": suite_oracle,
}


def run_suites(names, ns=(2, 3, 4), pairs=1000, seed=0, tol: Tol = DEFAULT_TOL):
    if names in ("all", ["all"], ("all",)):
        names = list(SUITES)
    results = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
        results += SUITES[name](list(ns), pairs, seed, tol)
    return results


def format_table(results) -> str:
    width = max(len(r.name) for r in results) if results else 10
    lines = [f"{'suite':<11} {'check':<{width}} {'trials':>7} {'fail':>5}  status"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{r.suite:<11} {r.name:<{width}} {r.trials:>7} {r.violations:>5}  {status}"
        if r.detail:
            line += f"  [{r.detail}]"
        lines.append(line)
        if not r.passed and r.counterexample:
            lines.append(f"{'':<11} first counterexample: {r.counterexample}")
    total = sum(not r.passed for r in results)
    lines.append(f"{len(results) - total}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
