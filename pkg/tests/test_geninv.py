import numpy as np
import pytest
import sympy

from diamond_lab.geninv import group_inverse, inner_inverse, is_ep, penrose_residuals, pinv
from diamond_lab.matcore import BlockMat, approx_eq, sample


def _sympy_pinv(a):
    return np.array(sympy.Matrix(a).pinv().evalf(), dtype=complex)


@pytest.mark.parametrize("a", [
    [[1, 2], [2, 4]],
    [[1, 0, 2], [0, 1, 1]],
    [[0, 1], [0, 0]],
    [[3, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[1, 1], [1, -1]],
])
def test_pinv_matches_exact_oracle(a):
    # [DERIVED] sympy rational Moore-Penrose inverse
    assert np.allclose(pinv(a), _sympy_pinv(a), atol=1e-12)


def test_pinv_of_zero_is_zero_transpose_shape():
    assert np.array_equal(pinv(np.zeros((2, 3))), np.zeros((3, 2)))


def test_pinv_satisfies_penrose_on_random():
    for s in range(20):
        a = sample("rank", 4, s, r=s % 5)
        assert penrose_residuals(a, pinv(a)).accepted(scale=1e-1)


def test_pinv_blockwise():
    x = BlockMat([np.array([[2.0]]), np.array([[1, 1], [1, 1]])])
    g = pinv(x)
    assert isinstance(g, BlockMat)
    assert np.allclose(g.dense(), np.linalg.pinv(x.dense()))


def test_group_inverse_nilpotent_is_none():
    # [DERIVED] rank(N^2)=0 < rank(N)=1
    assert group_inverse(np.array([[0, 1], [0, 0]])) is None


def test_group_inverse_rank_one_idempotent_like():
    # [DERIVED] for rank-one a with tr a != 0, a# = a / tr(a)^2
    a = np.array([[1, 1], [0, 0]], dtype=complex)
    assert np.allclose(group_inverse(a), a)
    b = np.array([[2, 4], [1, 2]], dtype=complex)
    assert np.allclose(group_inverse(b), b / 16)


def test_group_inverse_of_invertible_is_inverse():
    a = sample("ginibre", 3, 2)
    assert np.allclose(group_inverse(a), np.linalg.inv(a))


def test_group_inverse_defining_identities():
    a = np.array([[1, 2, 0], [0, 0, 0], [0, 3, 2]], dtype=complex)
    g = group_inverse(a)
    assert g is not None
    for lhs, rhs in [(a @ g @ a, a), (g @ a @ g, g), (a @ g, g @ a)]:
        assert approx_eq(lhs, rhs)


def test_ep_iff_group_equals_pinv():
    h = sample("hermitian", 3, 0)
    assert is_ep(h)
    assert not is_ep(np.array([[1, 1], [0, 0]]))


def test_inner_inverse_family():
    b = np.array([[1, 0], [0, 0]], dtype=complex)
    v = np.array([[0, 1], [1, 0]], dtype=complex)
    g = inner_inverse(b, v)
    assert approx_eq(b @ g @ b, b)
    assert np.allclose(inner_inverse(b, np.zeros((2, 2))), pinv(b))
    assert not np.allclose(g, pinv(b))


def test_inner_inverse_shape_check():
    with pytest.raises(ValueError):
        inner_inverse(np.ones((2, 3)), np.ones((2, 3)))
