import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swmimo.fading import jakes_matrix
from swmimo.numerics import (
    IllConditionedWarning,
    NotPositiveDefiniteError,
    SingularMatrixError,
    checked_inverse,
    cholesky_upper,
    hermitian_factor,
    hermitian_inv_sqrt,
    hermitian_sqrt,
)


def random_psd(n, seed, rank=None):
    rng = np.random.default_rng(seed)
    b = rng.standard_normal((rank or n, n)) + 1j * rng.standard_normal((rank or n, n))
    return b.conj().T @ b


def test_sqrt_trivial():
    np.testing.assert_allclose(hermitian_sqrt(np.eye(3)), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(hermitian_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14)


@given(st.integers(1, 8), st.integers(0, 10_000))
def test_sqrt_reconstructs(n, seed):
    a = random_psd(n, seed)
    s = hermitian_sqrt(a)
    scale = np.linalg.norm(a)
    assert np.linalg.norm(s @ s.conj().T - a) <= 1e-9 * scale
    # the root is Hermitian PSD itself
    np.testing.assert_allclose(s, s.conj().T, atol=1e-12 * np.linalg.norm(s))
    assert np.linalg.eigvalsh(s).min() >= -1e-10 * np.linalg.norm(s, 2)


def test_sqrt_4x4_oracle():
    a = random_psd(4, 7)
    s = hermitian_sqrt(a)
    assert np.linalg.norm(s @ s.conj().T - a) <= 1e-10 * np.linalg.norm(a)


def test_sqrt_rank_deficient_clamps():
    a = random_psd(5, 3, rank=2)
    s = hermitian_sqrt(a)
    assert np.linalg.norm(s @ s - a) <= 1e-9 * np.linalg.norm(a)


def test_sqrt_rejects_indefinite():
    with pytest.raises(NotPositiveDefiniteError, match="eigenvalue"):
        hermitian_sqrt(np.diag([1.0, -0.5]))


def test_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_sqrt(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_inv_sqrt_trivial():
    np.testing.assert_allclose(hermitian_inv_sqrt(4 * np.eye(3)), 0.5 * np.eye(3), atol=1e-15)
    np.testing.assert_allclose(hermitian_inv_sqrt(np.diag([1.0, 100.0])), np.diag([1.0, 0.1]), atol=1e-15)


@given(st.integers(1, 8), st.integers(0, 10_000))
def test_inv_sqrt_whitens(n, seed):
    a = random_psd(n, seed) + 0.1 * np.eye(n)
    w = hermitian_inv_sqrt(a)
    assert np.linalg.norm(w @ a @ w.conj().T - np.eye(n)) <= 1e-9
    # inverse of the square root
    assert np.linalg.norm(w @ hermitian_sqrt(a) - np.eye(n)) <= 1e-9


def test_inv_sqrt_rejects_singular():
    with pytest.raises(NotPositiveDefiniteError):
        hermitian_inv_sqrt(np.diag([1.0, 0.0]))


def test_eigenvalues_descending_stable():
    fac = hermitian_factor(np.diag([1.0, 3.0, 3.0, 2.0]))
    np.testing.assert_array_equal(fac.eigenvalues, [3.0, 3.0, 2.0, 1.0])
    assert np.linalg.norm(fac.reconstruct() - fac.source) <= 1e-12


def test_cholesky_trivial():
    np.testing.assert_array_equal(cholesky_upper(np.eye(3)), np.eye(3))


def test_cholesky_2x2_hand():
    # [[1, r], [r, 1]] = U^H U with U = [[1, r], [0, sqrt(1 - r^2)]]
    u = cholesky_upper(np.array([[1.0, 0.5], [0.5, 1.0]]))
    np.testing.assert_allclose(u, [[1.0, 0.5], [0.0, np.sqrt(0.75)]], atol=1e-15)


def test_cholesky_jakes_8():
    a = jakes_matrix(8, 1e7, 2e-9)
    u = cholesky_upper(a)
    assert np.allclose(u, np.triu(u))
    assert np.all(np.diag(u) > 0)
    assert np.isrealobj(u)
    assert np.linalg.norm(u.conj().T @ u - a) <= 1e-12 * np.linalg.norm(a)


@settings(max_examples=30)
@given(st.integers(1, 10), st.integers(0, 10_000))
def test_cholesky_complex(n, seed):
    a = random_psd(n, seed) + 0.01 * np.eye(n)
    u = cholesky_upper(a)
    assert np.allclose(u, np.triu(u))
    assert np.allclose(np.diag(u).imag, 0) and np.all(np.diag(u).real > 0)
    assert np.linalg.norm(u.conj().T @ u - a) <= 1e-10 * np.linalg.norm(a)


def test_cholesky_reports_pivot():
    a = np.ones((3, 3))
    with pytest.raises(NotPositiveDefiniteError, match="pivot index 1"):
        cholesky_upper(a)


def test_checked_inverse():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    inv = checked_inverse(a)
    assert np.linalg.norm(a @ inv - np.eye(5)) <= 1e-10


def test_checked_inverse_singular_names_label():
    with pytest.raises(SingularMatrixError, match="f=1e9"):
        checked_inverse(np.ones((2, 2)), label="f=1e9")


def test_checked_inverse_warns_when_ill_conditioned():
    a = np.diag([1.0, 1e-13])
    with pytest.warns(IllConditionedWarning, match="at f=5"):
        checked_inverse(a, label="f=5")
