import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from switchdwell import mat2
from switchdwell.mat2 import EigenKind, JordanClass, Stability

finite = st.floats(-20, 20, allow_nan=False)
matrices = st.lists(finite, min_size=4, max_size=4).map(lambda v: np.array(v).reshape(2, 2))


def power_norm(A, steps=100):
    G = A.T @ A
    v = np.array([1.0, 0.3])
    for _ in range(steps):
        v = G @ v
        v /= np.linalg.norm(v)
    return math.sqrt(v @ G @ v)


def random_class_matrix(kind, rng):
    P = rng.normal(size=(2, 2))
    while np.linalg.cond(P) > 50:
        P = rng.normal(size=(2, 2))
    if kind == "R":
        J = np.diag(rng.uniform(-3, 3, 2))
    elif kind == "C":
        a, b = rng.uniform(-3, 3), rng.uniform(0.1, 3)
        J = np.array([[a, b], [-b, a]])
    else:
        lam = rng.uniform(-3, 3)
        J = np.array([[lam, 1.0], [0.0, lam]])
    return P @ J @ np.linalg.inv(P)


class TestClassify:
    def test_examples(self):
        assert mat2.classify_eigen([[-1, 0], [0, -2]]) is EigenKind.REAL_DISTINCT
        assert mat2.classify_eigen([[-0.1, 1], [0, -0.1]]) is EigenKind.DEFECTIVE
        assert mat2.classify_eigen([[0, 1], [-2, 1]]) is EigenKind.COMPLEX
        assert mat2.classify_eigen(3 * np.eye(2)) is EigenKind.REAL_REPEATED

    def test_nonfinite(self):
        with pytest.raises(mat2.NonFinite):
            mat2.classify_eigen([[np.nan, 0], [0, 1]])
        with pytest.raises(mat2.NonFinite):
            mat2.real_jordan([[np.inf, 0], [0, 1]])


class TestRealJordan:
    def test_identity_basis(self):
        d = mat2.real_jordan(np.diag([-1.0, -2.0]))
        assert d.cls is JordanClass.REAL
        np.testing.assert_allclose(d.J, np.diag([-1.0, -2.0]))
        np.testing.assert_allclose(np.abs(d.P), np.eye(2))

    def test_rc_stable_block(self):
        d = mat2.real_jordan([[-0.1, 0], [0.4, -0.2]])
        np.testing.assert_allclose(d.J, np.diag([-0.1, -0.2]), atol=1e-14)
        assert d.params == pytest.approx((0.1, 0.2))

    def test_nn_unstable_block(self):
        d = mat2.real_jordan([[-2.8, 9], [-1, 3.2]])
        assert d.cls is JordanClass.DEFECTIVE
        np.testing.assert_allclose(d.J, [[0.2, 1], [0, 0.2]], atol=1e-12)
        # the printed basis is also admissible
        P = np.array([[3.0, 8.0], [1.0, 3.0]])
        np.testing.assert_allclose(P @ d.J @ np.linalg.inv(P), [[-2.8, 9], [-1, 3.2]], atol=1e-12)

    def test_complex_canonical_beta_positive(self):
        d = mat2.real_jordan([[0, 1], [-2, 1]])
        assert d.cls is JordanClass.COMPLEX
        alpha, beta = d.params
        assert alpha == pytest.approx(0.5)
        assert beta == pytest.approx(math.sqrt(7) / 2)

    @pytest.mark.parametrize("kind", ["R", "C", "N"])
    def test_round_trip_200(self, kind):
        rng = np.random.default_rng({"R": 1, "C": 2, "N": 3}[kind])
        for _ in range(200):
            A = random_class_matrix(kind, rng)
            d = mat2.real_jordan(A)
            err = np.linalg.norm(d.P @ d.J @ np.linalg.inv(d.P) - A, 2)
            assert err <= 1e-9 * np.linalg.norm(A, 2)

    @given(matrices)
    def test_round_trip_property(self, A):
        assume(np.linalg.norm(A) > 1e-3)
        try:
            d = mat2.real_jordan(A)
        except mat2.DegenerateBasis:
            return
        assert np.allclose(d.matrix(), A, atol=1e-6 * (1 + np.abs(A).max()))


class TestStability:
    def test_examples(self):
        assert mat2.stability_class(mat2.real_jordan([[-0.1, 0], [0.4, -0.2]])) is Stability.HURWITZ
        assert mat2.stability_class(mat2.real_jordan([[0, 1], [0, 0]])) is Stability.UNSTABLE
        assert mat2.stability_class(mat2.real_jordan(np.diag([-1.0, 0.0]))) is Stability.REJECTED


class TestTransition:
    def test_identity(self):
        M = mat2.transition(np.eye(2), np.eye(2))
        np.testing.assert_allclose(M, np.eye(2))

    def test_nn_bases(self):
        M = mat2.transition(np.eye(2), [[3, 8], [1, 3]])
        np.testing.assert_allclose(M, [[3, -8], [-1, 3]], atol=1e-12)

    def test_prefer_plus(self):
        M = mat2.transition(np.eye(2), np.diag([1.0, -4.0]), prefer_plus=True, flip="P2")
        assert mat2.det(M) == pytest.approx(1.0)

    def test_singular(self):
        with pytest.raises(mat2.SingularBasis):
            mat2.transition(np.zeros((2, 2)), np.eye(2))

    @given(matrices, matrices)
    def test_unit_determinant(self, P1, P2):
        assume(abs(np.linalg.det(P1)) > 1e-3 and abs(np.linalg.det(P2)) > 1e-3)
        M = mat2.transition(P1, P2)
        assert abs(abs(mat2.det(M)) - 1.0) <= 1e-12


class TestNorms:
    def test_examples(self):
        assert mat2.spectral_norm(np.eye(2)) == pytest.approx(1.0)
        assert mat2.spectral_norm(np.diag([3.0, -4.0])) == pytest.approx(4.0)
        shear = np.array([[1.0, 1.0], [0.0, 1.0]])
        assert mat2.spectral_norm(shear) == pytest.approx(power_norm(shear), rel=1e-12)
        assert mat2.spectral_norm(shear) == pytest.approx(mat2.theta(1.0), rel=1e-14)

    @given(matrices)
    def test_matches_numpy(self, A):
        assert mat2.spectral_norm(A) == pytest.approx(np.linalg.norm(A, 2), rel=1e-10, abs=1e-12)

    def test_fleming_examples(self):
        assert mat2.fleming_lt1(0.5 * np.eye(2))
        assert not mat2.fleming_lt1(np.eye(2))

    def test_fleming_random_50(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            K = rng.normal(scale=0.6, size=(2, 2))
            assert mat2.fleming_lt1(K) == (mat2.spectral_norm(K) < 1)

    @given(matrices)
    def test_fleming_property(self, K):
        K = K / 15.0
        n = mat2.spectral_norm(K)
        assume(abs(n - 1.0) > 1e-12)
        assert mat2.fleming_lt1(K) == (n < 1)


class TestTheta:
    def test_values(self):
        assert mat2.theta(0.0) == 1.0
        assert mat2.theta(10.0) == pytest.approx(np.linalg.norm([[1, 10], [0, 1]], 2), rel=1e-12)
        with pytest.raises(mat2.NegativeArgument):
            mat2.theta(-1.0)

    @given(st.floats(0, 100))
    def test_shear_norm(self, t):
        assert mat2.theta(t) == pytest.approx(np.linalg.norm([[1, t], [0, 1]], 2), rel=1e-10)

    @given(st.floats(0, 50), st.floats(1e-3, 10))
    def test_increasing(self, t, h):
        assert mat2.theta(t + h) > mat2.theta(t) >= 1.0
        assert mat2.log_theta(t) == pytest.approx(math.log(mat2.theta(t)), abs=1e-12)


class TestExpm:
    blocks = [np.diag([-1.0, 0.5]), np.array([[-0.3, 2.0], [-2.0, -0.3]]),
              np.array([[-0.4, 1.0], [0.0, -0.4]]), np.array([[0.2, 1.0], [0.0, 0.2]])]

    @pytest.mark.parametrize("J", blocks)
    def test_zero(self, J):
        np.testing.assert_array_equal(mat2.expm(J, 0.0), np.eye(2))

    def test_defective_taylor(self):
        n, t = 0.4, 0.7
        J = np.array([[-n, 1.0], [0.0, -n]])
        acc, term = np.eye(2), np.eye(2)
        for k in range(1, 21):
            term = term @ J * t / k
            acc = acc + term
        np.testing.assert_allclose(mat2.expm(J, t), acc, atol=1e-12)
        np.testing.assert_allclose(mat2.expm(J, t), math.exp(-n * t) * np.array([[1, t], [0, 1]]))

    def test_half_turn(self):
        a, b = -0.2, 1.7
        J = np.array([[a, b], [-b, a]])
        np.testing.assert_allclose(mat2.expm(J, math.pi / b), -math.exp(a * math.pi / b) * np.eye(2), atol=1e-14)

    @pytest.mark.parametrize("J", blocks)
    @given(t=st.floats(0, 10), s=st.floats(0, 10))
    def test_semigroup(self, J, t, s):
        lhs = mat2.expm(J, t + s)
        rhs = mat2.expm(J, t) @ mat2.expm(J, s)
        assert np.abs(lhs - rhs).max() <= 1e-10 * max(1.0, np.abs(lhs).max())

    def test_vectorised(self):
        J = self.blocks[1]
        ts = np.linspace(0, 3, 7)
        stack = mat2.expm(J, ts)
        assert stack.shape == (7, 2, 2)
        np.testing.assert_allclose(stack[3], mat2.expm(J, ts[3]))

    def test_overflow(self):
        with pytest.raises(mat2.Overflow):
            mat2.expm(np.diag([1.0, 2.0]), 1000.0)

    def test_sup_norm_defective(self):
        J = np.array([[-0.1, 1.0], [0.0, -0.1]])
        ts = np.linspace(0, 200, 200001)
        dense = max(mat2.spectral_norm(E) for E in mat2.expm(J, ts[::50]))
        assert mat2.sup_expm_norm(J) >= dense - 1e-9
        assert mat2.sup_expm_norm(J) == pytest.approx(dense, rel=1e-5)
