"""Symbolic checks that the generator's block patterns satisfy the hypotheses identically."""

import pytest

sp = pytest.importorskip("sympy")


def _zero(m):
    return all(sp.simplify(x) == 0 for x in m)


def _blocks(*rows):
    return sp.Matrix(sp.BlockMatrix(rows))


def _commutative_hypotheses(a, b, api):
    return (a * a * b * api - api * a * b * a, api * b * b * a - b * a * b * api)


def _orthogonal_hypotheses(a, b, api):
    return (api * b * a * a, api * b * a * b)


class TestCommutativeGeneral:
    """Core 2, a 2x2 tail block, and the isolated coordinate u."""

    def pair(self, tail):
        p, q, r, s, t, lam, x = sp.symbols("p q r s t lam x")
        v = sp.Matrix([sp.symbols("v1 v2")])
        m0 = sp.Matrix(2, 2, sp.symbols("m1:5"))
        a1 = sp.Matrix([[p, q], [r, s]])
        proj = sp.eye(2) - v.T * v / (v * v.T)[0]
        # v b1 = -lam v for every rescaling t of (b1, lam)
        b1 = t * (-lam * sp.eye(2) + proj * m0)
        a2 = sp.Matrix([[0, x], [0, 0]])
        if tail == "commuting":
            c0, c1 = sp.symbols("c0 c1")
            b2 = c0 * sp.eye(2) + c1 * a2
        else:
            g = sp.Matrix(2, 2, sp.symbols("g1:5"))
            b2 = g * sp.Matrix([[0, 0], [0, 1]])
        z = sp.zeros
        a = _blocks([a1, z(2, 2), z(2, 1)], [z(2, 2), a2, z(2, 1)], [z(1, 2), z(1, 2), z(1, 1)])
        b = _blocks([b1, z(2, 2), z(2, 1)], [z(2, 2), b2, z(2, 1)], [v, z(1, 2), sp.Matrix([[t * lam]])])
        api = sp.diag(0, 0, 1, 1, 1)
        return a, b, api

    @pytest.mark.parametrize("tail", ["commuting", "shift"])
    def test_hypotheses_vanish(self, tail):
        a, b, api = self.pair(tail)
        for residual in _commutative_hypotheses(a, b, api):
            assert _zero(residual)

    def test_spectral_idempotent_is_block_projector(self):
        a, _, api = self.pair("commuting")
        ad = sp.diag(a[:2, :2].inv(), 0, 0, 0)
        assert _zero(a * ad - ad * a)
        assert _zero(ad * a * ad - ad)
        assert _zero(a**3 * ad - a**2)
        assert _zero(sp.eye(5) - a * ad - api)


class TestOrthogonalShift:
    """3x3 shift tail with b4 = -a2 + d, with and without the planted d."""

    @pytest.mark.parametrize("plant", [False, True])
    def test_hypotheses_vanish(self, plant):
        p, q, r, s, x, y, d1, d2 = sp.symbols("p q r s x y d1 d2")
        a1 = sp.Matrix([[p, q], [r, s]])
        b1 = sp.Matrix(2, 2, sp.symbols("k1:5"))
        b2 = sp.Matrix(2, 3, sp.symbols("h1:7"))
        j = sp.Matrix([[0, x, 0], [0, 0, y], [0, 0, 0]])
        d = sp.Matrix([[0, 0, d1], [0, 0, d2], [0, 0, 0]]) if plant else sp.zeros(3, 3)
        a = sp.diag(a1, j)
        b = _blocks([b1, b2], [sp.zeros(3, 2), -j + d])
        api = sp.diag(0, 0, 1, 1, 1)
        for residual in _orthogonal_hypotheses(a, b, api):
            assert _zero(residual)
        tail = (-j + d) + j
        assert _zero(tail * tail) and (not plant or not _zero(tail))
