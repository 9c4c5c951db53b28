from fractions import Fraction

import pytest

from diamond_lab.exact import exact_leq, exact_rank, to_exact


def test_to_exact_is_lossless():
    m = to_exact([[0.5, 0.1], [0, 1]])
    assert m[0][0] == Fraction(1, 2)
    assert m[0][1] == Fraction(0.1)


def test_to_exact_rejects_complex():
    with pytest.raises(ValueError):
        to_exact([[1j]])


def test_rank():
    assert exact_rank(to_exact([[1, 2], [2, 4]])) == 1
    assert exact_rank(to_exact([[0, 0], [0, 0]])) == 0
    assert exact_rank(to_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3


def test_small_verdicts():
    e11, one = to_exact([[1, 0], [0, 0]]), to_exact([[1, 0], [0, 1]])
    assert exact_leq("diamond", e11, one)
    assert not exact_leq("diamond", e11, to_exact([[2, 0], [0, 0]]))
    assert exact_leq("minus", to_exact([[1, 0], [0, 0]]), to_exact([[1, 0], [0, 2]]))
    assert exact_leq("sharp", to_exact([[0, 1], [0, 0]]), one) is None


def test_unknown_kind():
    with pytest.raises(ValueError):
        exact_leq("nope", ((Fraction(1),),), ((Fraction(1),),))
