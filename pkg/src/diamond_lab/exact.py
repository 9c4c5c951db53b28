"""Exact rational evaluation of the order definitions.

Matrices are tuples of rows of :class:`fractions.Fraction` (real entries,
so the adjoint is the transpose). Nothing here touches floating point,
which makes it an independent oracle for the numerical predicates on
small matrices with exactly representable entries.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["to_exact", "exact_rank", "exact_leq", "EXACT_KINDS"]


def to_exact(a):
    """Convert a real matrix whose entries are exactly representable floats."""
    rows = []
    for row in a:
        out = []
        for x in row:
            x = complex(x)
            if x.imag != 0:
                raise ValueError("exact oracle handles real matrices only")
            out.append(Fraction(x.real))
        rows.append(tuple(out))
    return tuple(rows)


def _mul(a, b):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
                       for j in range(len(b[0]))) for i in range(len(a)))


def _sub(a, b):
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def _t(a):
    return tuple(zip(*a))


def _is_zero(a):
    return all(x == 0 for row in a for x in row)


def exact_rank(a) -> int:
    m = [list(r) for r in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def _col_incl(b, a):
    # Im a subset of Im b
    return exact_rank(tuple(rb + ra for rb, ra in zip(b, a))) == exact_rank(b)


def _row_incl(b, a):
    return _col_incl(_t(b), _t(a))


def _group_inverse_2x2(a):
    """Group inverse of a 2x2 matrix, or None."""
    r = exact_rank(a)
    if r == 0:
        return a
    if r == 2:
        det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
        return ((a[1][1] / det, -a[0][1] / det), (-a[1][0] / det, a[0][0] / det))
    tr = a[0][0] + a[1][1]
    if tr == 0:  # rank one and nilpotent
        return None
    return tuple(tuple(x / (tr * tr) for x in row) for row in a)


EXACT_KINDS = ("space", "diamond", "star", "left_star", "right_star", "minus", "sharp")


def exact_leq(kind: str, a, b):
    """Exact verdict: ``True``/``False``, or ``None`` when inapplicable (sharp)."""
    space = _col_incl(b, a) and _row_incl(b, a)
    if kind == "space":
        return space
    if kind == "diamond":
        return space and _mul(_mul(a, _t(a)), a) == _mul(_mul(a, _t(b)), a)
    left = _mul(_t(a), a) == _mul(_t(a), b)
    right = _mul(a, _t(a)) == _mul(b, _t(a))
    if kind == "star":
        return left and right
    if kind == "left_star":
        return left and _col_incl(b, a)
    if kind == "right_star":
        return right and _row_incl(b, a)
    if kind == "minus":
        return exact_rank(_sub(b, a)) == exact_rank(b) - exact_rank(a)
    if kind == "sharp":
        if len(a) != 2:
            raise ValueError("exact sharp order is implemented for 2x2 matrices")
        ga = _group_inverse_2x2(a)
        if ga is None or _group_inverse_2x2(b) is None:
            return None
        return (_is_zero(_sub(_mul(ga, a), _mul(ga, b)))
                and _is_zero(_sub(_mul(a, ga), _mul(b, ga))))
    raise ValueError(f"unknown order kind {kind!r}")
