import numpy as np
import pytest

from momentbc.errors import CannotSeparate, NotSymmetric, SingularInput
from momentbc.takagi import enforce_distinct, takagi_factorize


def unitarity_residual(fac):
    n = fac.n
    return float(np.max(np.abs(fac.U @ fac.U.conj().T - np.eye(n))))


def diagonalization_residual(A, fac):
    return float(np.max(np.abs(fac.U @ A @ fac.U.T - np.diag(fac.d))))


def reconstruction_residual(A, fac):
    return float(np.max(np.abs(A - fac.U.conj().T @ np.diag(fac.d) @ np.conj(fac.U))))


def random_symmetric(rng, n, bound=10.0):
    B = rng.uniform(-bound, bound, (n, n)) + 1j * rng.uniform(-bound, bound, (n, n))
    return 0.5 * (B + B.T)


def engineered_degenerate(rng, n, values):
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, _ = np.linalg.qr(Z)
    A = (Q * np.asarray(values)[None, :]) @ Q.T
    return 0.5 * (A + A.T)


class TestFactorize:
    def test_positive_scalar(self):
        fac = takagi_factorize(np.array([[2.0]]))
        assert fac.d[0] == 2.0
        assert abs(abs(fac.U[0, 0]) - 1.0) < 1e-15

    def test_negative_scalar_gets_quarter_turn(self):
        A = np.array([[-4.0]])
        fac = takagi_factorize(A)
        assert abs(fac.d[0] - 4.0) < 1e-14
        assert abs(fac.U[0, 0] ** 2 + 1.0) < 1e-14          # U = +/- i
        assert abs((fac.U @ A @ fac.U.T)[0, 0] - 4.0) < 1e-14

    def test_degenerate_pair(self):
        A = np.array([[0.0, 1.0], [1.0, 0.0]])
        fac = takagi_factorize(A)
        assert np.max(np.abs(fac.d - 1.0)) < 1e-14
        assert diagonalization_residual(A, fac) < 1e-12

    def test_random_instances(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 13))
            A = random_symmetric(rng, n)
            fac = takagi_factorize(A)
            assert unitarity_residual(fac) < 1e-12
            assert diagonalization_residual(A, fac) < 1e-10
            assert reconstruction_residual(A, fac) < 1e-10
            assert np.all(np.diff(fac.d.real) <= 1e-12)      # descending

    def test_values_are_singular_values(self, rng):
        # cross-check against an independent route: eigenvalues of A^H A
        A = random_symmetric(rng, 7)
        fac = takagi_factorize(A)
        squares = np.linalg.eigvalsh(A.conj().T @ A)[::-1]
        assert np.max(np.abs(fac.d.real - np.sqrt(np.maximum(squares, 0)))) < 1e-10

    def test_engineered_degeneracies(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 13))
            k = int(rng.integers(2, n + 1))
            values = np.concatenate([np.full(k, 3.0), rng.uniform(0.5, 2.0, n - k)])
            A = engineered_degenerate(rng, n, values)
            fac = takagi_factorize(A)
            assert unitarity_residual(fac) < 1e-12
            assert diagonalization_residual(A, fac) < 1e-10
            assert reconstruction_residual(A, fac) < 1e-10

    def test_rejects_asymmetric(self):
        with pytest.raises(NotSymmetric):
            takagi_factorize(np.array([[0.0, 1.0], [0.5, 0.0]]))

    def test_rejects_singular(self):
        with pytest.raises(SingularInput):
            takagi_factorize(np.array([[1.0, 1.0], [1.0, 1.0]]))


class TestEnforceDistinct:
    def test_distinct_input_untouched(self, rng):
        A = random_symmetric(rng, 5)
        fac = takagi_factorize(A)
        if len(set(np.round(fac.d.real, 6))) == 5:
            out = enforce_distinct(fac)
            assert out is fac

    def test_configured_phase(self):
        A = np.array([[0.0, 1.0], [1.0, 0.0]])
        fac = enforce_distinct(takagi_factorize(A), phase_step=np.pi / 3)
        expected = {1.0 + 0j, np.exp(1j * np.pi / 3)}
        got = set(np.round(fac.d, 12))
        assert {np.round(z, 12) for z in expected} == got
        assert diagonalization_residual(A, fac) < 1e-10

    def test_triple_tie_spreads(self, rng):
        A = engineered_degenerate(rng, 3, [2.0, 2.0, 2.0])
        fac = enforce_distinct(takagi_factorize(A))
        d = fac.d
        sep = min(abs(d[i] - d[j]) for i in range(3) for j in range(i + 1, 3))
        assert sep > 1e-8 * np.max(np.abs(d))
        assert unitarity_residual(fac) < 1e-12
        assert diagonalization_residual(A, fac) < 1e-10

    def test_invariants_preserved(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 10))
            k = int(rng.integers(2, n + 1))
            values = np.concatenate([np.full(k, 1.5), rng.uniform(0.3, 1.0, n - k)])
            A = engineered_degenerate(rng, n, values)
            fac = enforce_distinct(takagi_factorize(A))
            assert unitarity_residual(fac) < 1e-12
            assert diagonalization_residual(A, fac) < 1e-10
            assert reconstruction_residual(A, fac) < 1e-10

    def test_zero_step_cannot_separate(self, rng):
        A = engineered_degenerate(rng, 2, [2.0, 2.0])
        with pytest.raises(CannotSeparate):
            enforce_distinct(takagi_factorize(A), phase_step=0.0)
