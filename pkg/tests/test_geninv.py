import numpy as np
import pytest

from drazinpert.errors import CornerSingular, NotGroupInvertible, PreconditionViolated
from drazinpert.geninv import (
    cline_check,
    corner_inverse,
    drazin,
    drazin_residuals,
    drazin_via_powers,
    group_inverse,
    index_by_rank,
    is_idempotent,
    split_check,
)
from drazinpert.harness.generate import GenSpec, generate_pair, planted_index_matrix
from drazinpert.harness.worked import DIAGONAL_GROUP_INVERSE


class TestDrazin:
    def test_worked_diagonal(self, diag_pair):
        res = drazin(diag_pair[0])
        np.testing.assert_allclose(res.inverse, np.diag([1, 1, 0, 0]), atol=1e-14)
        np.testing.assert_allclose(res.spectral_idempotent, np.diag([0, 0, 1, 1]), atol=1e-14)
        assert res.index == 2

    def test_shift(self, shift):
        res = drazin(shift[0])
        assert res.index == 3
        np.testing.assert_array_equal(res.inverse, np.zeros((3, 3)))
        np.testing.assert_array_equal(res.spectral_idempotent, np.eye(3))

    def test_identity(self):
        res = drazin(np.eye(4))
        assert res.index == 0
        np.testing.assert_allclose(res.inverse, np.eye(4))
        np.testing.assert_allclose(res.spectral_idempotent, 0, atol=1e-15)

    def test_zero_and_empty(self):
        assert drazin(np.zeros((3, 3))).index == 1
        assert drazin(np.zeros((0, 0))).index == 0

    def test_parts(self, rng):
        m, _ = planted_index_matrix(6, 2, seed=3)
        res = drazin(m)
        np.testing.assert_allclose(res.core_part + res.nil_part, m, atol=1e-12)
        assert is_idempotent(res.spectral_idempotent)
        np.testing.assert_allclose(res.spectral_idempotent @ res.inverse, 0, atol=1e-10)

    @pytest.mark.parametrize("index", [0, 1, 2, 3, 4])
    def test_planted_index(self, index):
        for seed in range(5):
            m, _ = planted_index_matrix(7, index, seed)
            res = drazin(m)
            assert res.index == index
            assert index_by_rank(m) == index
            assert max(drazin_residuals(m, res.inverse, res.index).values()) < 1e-10

    def test_powers_route_agrees(self):
        for seed in range(10):
            m, _ = planted_index_matrix(6, 1 + seed % 3, seed)
            res = drazin(m)
            alt = drazin_via_powers(m, res.index)
            assert np.abs(alt - res.inverse).sum() <= 1e-8 * (1 + np.abs(res.inverse).sum())

    def test_scale_treats_roundoff_as_zero(self):
        noise = np.full((3, 3), 1e-17)
        assert np.abs(drazin(noise).inverse).max() > 1e10
        np.testing.assert_array_equal(drazin(noise, scale=1.0).inverse, 0)


class TestGroupInverse:
    def test_worked_sum(self, diag_pair):
        a, b = diag_pair
        np.testing.assert_allclose(group_inverse(a + b), DIAGONAL_GROUP_INVERSE, atol=1e-14)

    def test_zero(self):
        np.testing.assert_array_equal(group_inverse(np.zeros((2, 2))), 0)

    def test_shift_rejected(self, shift):
        with pytest.raises(NotGroupInvertible) as exc:
            group_inverse(shift[0])
        assert exc.value.index == 3
        assert exc.value.exit_code == 2

    def test_group_identity(self):
        m, _ = planted_index_matrix(5, 1, seed=9)
        g = group_inverse(m)
        np.testing.assert_allclose(m @ g @ m, m, atol=1e-10)


class TestCornerInverse:
    def test_worked_corner(self, diag_pair):
        a, b = diag_pair
        p = a @ drazin(a).inverse
        np.testing.assert_allclose(corner_inverse(p, a + b), np.diag([2 / 3, 1, 0, 0]), atol=1e-14)

    def test_trivial_corners(self, rng):
        m = rng.standard_normal((3, 3)) + 3 * np.eye(3)
        np.testing.assert_allclose(corner_inverse(np.eye(3), m), np.linalg.inv(m))
        p = np.diag([1.0, 1.0, 0.0])
        np.testing.assert_allclose(corner_inverse(p, p), p)

    def test_corner_identity(self, rng):
        p = np.diag([1.0, 1.0, 0.0, 0.0])
        m = rng.standard_normal((4, 4))
        y = corner_inverse(p, m)
        np.testing.assert_allclose(y @ p @ m @ p, p, atol=1e-12)

    def test_errors(self):
        with pytest.raises(CornerSingular):
            corner_inverse(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        with pytest.raises(PreconditionViolated):
            corner_inverse(np.diag([2.0, 0.0]), np.eye(2))


class TestSplitAndCline:
    def test_diagonal_split(self):
        chk = split_check(np.diag([1.0, 0.0]), np.diag([2.0, 3.0]))
        assert chk.holds
        np.testing.assert_allclose(chk.lhs_d, np.diag([0.5, 0.0]))

    def test_identity_split(self, rng):
        m, _ = planted_index_matrix(4, 2, seed=1)
        assert split_check(np.eye(4), m).holds

    def test_split_precondition(self):
        with pytest.raises(PreconditionViolated):
            split_check(np.diag([1.0, 0.0]), np.ones((2, 2)))

    def test_spectral_idempotent_split(self):
        # e = a^pi and a = b of an orthogonal-type pair
        for seed in range(5):
            a, b = generate_pair(GenSpec("T2.3", 6, 3, seed, family="general"))
            assert split_check(drazin(a).spectral_idempotent, b).holds

    def test_cline(self, rng, diag_pair):
        x, y = rng.standard_normal((4, 4)), rng.standard_normal((4, 4))
        assert cline_check(x, y)
        assert cline_check(np.eye(3), np.eye(3))
        a = diag_pair[0]
        assert cline_check(a, drazin(a).spectral_idempotent)
