import numpy as np
import pytest

from diamond_lab.matcore import adj, approx_eq, rank, sample, unit
from diamond_lab.orders import gen_diamond_pair, leq_diamond
from diamond_lab.structure import (
    Inapplicable, RankOne, canonical_projections, invertibility_probe, is_maximal_diamond,
    is_minimal_diamond, maximality_witness, minimal_below, projection_characterization,
    scalar_factor, scalar_unitary_defect, trace_functional, unitary_mult_preserves,
)

E11, E12, E21, E22 = unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 0), unit(2, 1, 1)


class TestTraceFunctional:
    def test_e11_picks_the_corner(self):
        x = sample("ginibre", 2, 3)
        assert trace_functional(RankOne.from_matrix(E11), x) == pytest.approx(x[0, 0])

    def test_e12_e21(self):
        assert trace_functional(RankOne.from_matrix(E12), E21) == pytest.approx(1)

    def test_defining_identity_and_unit_value(self):
        u = RankOne(sample("ginibre", 4, 1)[:, 0], sample("ginibre", 4, 2)[:, 0])
        x = sample("ginibre", 4, 5)
        m = u.matrix
        assert np.allclose(m @ x @ m, trace_functional(u, x) * m)
        assert trace_functional(u, np.eye(4)) == pytest.approx(np.trace(m))
        assert u.trace == pytest.approx(np.trace(m))

    def test_from_matrix_rejects_higher_rank(self):
        with pytest.raises(ValueError):
            RankOne.from_matrix(np.eye(2))


class TestMinimal:
    def test_identity_with_e11(self):
        assert np.allclose(minimal_below(np.eye(2), w=E11).matrix, E11)

    def test_scaled_corner(self):
        a = np.diag([2.0, 0])
        u = minimal_below(a, w=E11).matrix
        assert np.allclose(u, 2 * E11)
        assert leq_diamond(u, a)

    def test_random_sweep(self):
        for s in range(40):
            n = 2 + s % 7
            a = sample("rank", n, s, r=1 + s % n)
            u = minimal_below(a, seed=s).matrix
            assert rank(u) == 1 and leq_diamond(u, a)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            minimal_below(np.zeros((2, 2)))

    def test_is_minimal(self):
        assert is_minimal_diamond(E11, probes=[E11, 0.5 * E11, E22])
        assert not is_minimal_diamond(np.eye(2))
        below = minimal_below(np.eye(2)).matrix
        assert leq_diamond(below, np.eye(2)) and not approx_eq(below, np.eye(2))
        with pytest.raises(ValueError):
            is_minimal_diamond(np.zeros((2, 2)))


class TestMaximal:
    def test_examples(self):
        assert is_maximal_diamond(np.eye(3))
        assert is_maximal_diamond(sample("unitary", 3, 0))
        a = np.diag([1.0, 0])
        assert not is_maximal_diamond(a)
        b = maximality_witness(a, seed=1)
        assert leq_diamond(a, b) and not approx_eq(a, b)
        assert np.allclose(b[0], [1, 0]) and np.allclose(b[:, 0], [1, 0]) and abs(b[1, 1]) > 0

    def test_invertible_has_no_witness(self):
        assert maximality_witness(np.eye(2)) is None


class TestProjectionCharacterization:
    def test_examples(self):
        assert projection_characterization(np.diag([1.0, 0]))
        assert not projection_characterization(np.array([[1.0, 1], [0, 0]]))
        assert not projection_characterization(0.5 * np.eye(2))

    def test_relative_to_subprojection(self):
        q = np.diag([1.0, 1, 0])
        assert projection_characterization(np.diag([1.0, 0, 0]), q)
        assert not projection_characterization(np.diag([0, 0, 1.0]), q)

    def test_non_projection_q_is_inapplicable(self):
        with pytest.raises(Inapplicable):
            projection_characterization(E11, 2 * np.eye(2))


class TestProbe:
    def test_identity_and_random_invertible(self):
        for a in (np.eye(3), sample("ginibre", 4, 2)):
            res = invertibility_probe(a)
            assert res.invertible and res.first_failure is None
            assert len(res.transcript) == a.shape[0] ** 2

    def test_singular_transcript_names_range_failure(self):
        res = invertibility_probe(np.diag([1.0, 0]))
        assert not res.invertible
        step = next(s for s in res.transcript if (s.i, s.j) == (1, 1))
        assert "col(u) not in col(a)" in step.reason

    def test_agrees_with_rank(self):
        for s in range(60):
            n = 2 + s % 3
            a = sample("rank", n, s, r=s % (n + 1))
            assert invertibility_probe(a).invertible == (rank(a) == n)


class TestUnitaryMultiplication:
    def test_scalar_factor(self):
        assert scalar_factor(3 * np.eye(2)) == pytest.approx(3)
        assert scalar_factor(np.diag([1.0, 2])) is None

    def test_identity_and_scaled_unitary_preserve(self):
        pairs = [gen_diamond_pair(3, s) for s in range(200)]
        assert unitary_mult_preserves(np.eye(3), pairs)
        assert unitary_mult_preserves(3 * sample("unitary", 3, 9), pairs)

    def test_non_scalar_is_inapplicable(self):
        with pytest.raises(Inapplicable):
            unitary_mult_preserves(np.diag([1.0, 2]), [(E11, np.eye(2))])


class TestDefect:
    def test_unitary_has_none(self):
        assert scalar_unitary_defect(sample("unitary", 3, 4)).status == "no_defect"

    def test_diag_1_2_has_verified_witness(self):
        d = np.diag([1.0, 2])
        res = scalar_unitary_defect(d)
        assert res.status == "defect"
        _, a, b = res.witness
        assert leq_diamond(a, b).holds != leq_diamond(a @ d, b @ d).holds

    def test_scaled_isometry(self):
        assert scalar_unitary_defect(2 * sample("unitary", 3, 1)).status == "no_defect"
        assert scalar_unitary_defect(2 * np.diag([1.0, 0.5])).status == "defect"

    def test_singular_multiplier(self):
        res = scalar_unitary_defect(np.diag([1.0, 0]))
        assert res.status == "defect" and res.witness[0] is None

    def test_canonical_projection_count(self):
        ps = canonical_projections(4)
        assert len(ps) == 10
        assert all(np.allclose(p @ p, p) and np.allclose(p, adj(p)) for p in ps)
