"""Eigendecomposition and determinant kernels against independent oracles."""

import numpy as np
import pytest

from hankelbands import complex_det_lu, hermitian_eigh

from oracles import jacobi_eigenvalues


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def test_diagonal_matrix():
    d = hermitian_eigh(np.diag([3.0, 1.0, 2.0]).astype(complex))
    assert np.allclose(d.eigenvalues, [1.0, 2.0, 3.0])


def test_two_by_two_exchange():
    d = hermitian_eigh(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    assert np.allclose(d.eigenvalues, [-1.0, 1.0])


def test_reconstruction_and_orthonormality():
    rng = np.random.default_rng(1)
    a = random_hermitian(rng, 50)
    d = hermitian_eigh(a)
    v, w = d.eigenvectors, d.eigenvalues
    norm = np.linalg.norm(a)
    assert np.linalg.norm(v @ np.diag(w) @ v.conj().T - a) <= 1e-10 * norm
    gram = v.conj().T @ v
    assert np.max(np.abs(gram - np.eye(50))) <= 1e-12
    # column-wise residual
    assert np.max(np.linalg.norm(a @ v - v * w, axis=0)) <= 1e-10 * np.linalg.norm(a, 2)


def test_eigenvalues_match_jacobi_oracle():
    rng = np.random.default_rng(2)
    for n in (6, 17, 33):
        a = random_hermitian(rng, n)
        ours = hermitian_eigh(a).eigenvalues
        ref = jacobi_eigenvalues(a)
        assert np.max(np.abs(ours - ref)) <= 1e-11 * max(1.0, np.max(np.abs(ref)))


def test_non_hermitian_rejected_with_asymmetry():
    a = np.array([[1.0, 2.0], [0.0, 1.0]], dtype=complex)
    with pytest.raises(ValueError, match="2.0"):
        hermitian_eigh(a)


def test_unimodular_diagonal_conjugation_invariance():
    # removing a unimodular diagonal factor does not move the spectrum
    rng = np.random.default_rng(3)
    a = random_hermitian(rng, 24)
    phases = np.exp(1j * rng.uniform(0, 2 * np.pi, 24))
    u = np.diag(phases)
    b = u.conj().T @ a @ u
    wa = hermitian_eigh(a).eigenvalues
    wb = hermitian_eigh(b).eigenvalues
    assert np.max(np.abs(wa - wb)) <= 1e-11


def test_det_identity_and_diagonal():
    assert complex_det_lu(np.eye(10, dtype=complex)) == pytest.approx(1.0, rel=1e-13)
    assert complex_det_lu(np.diag([2.0, 3.0j])) == pytest.approx(6.0j, rel=1e-13)


def test_det_singular_is_zero():
    a = np.array([[1.0, 2.0], [2.0, 4.0]], dtype=complex)
    assert complex_det_lu(a) == 0.0


def test_det_matches_general_eigenvalue_product():
    rng = np.random.default_rng(4)
    a = rng.normal(size=(30, 30)) + 1j * rng.normal(size=(30, 30))
    ours = complex_det_lu(a)
    ref = np.prod(np.linalg.eigvals(a))
    assert abs(ours - ref) <= 1e-9 * abs(ref)


def test_det_of_resolvent_style_matrix_matches_eigen_product():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(5, 40))
        a = random_hermitian(rng, n)
        lam = complex(rng.normal(), rng.normal())
        if abs(lam) < 0.3:
            continue
        w = hermitian_eigh(a).eigenvalues
        lhs = complex_det_lu(np.eye(n, dtype=complex) - a / lam)
        rhs = np.prod(1.0 - w / lam)
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


def test_det_log_accumulation_no_overflow():
    # a naive running product of pivots passes through 1e400 here; the
    # log-magnitude accumulation recovers the exact, representable result
    a = np.diag(np.array([1e200 + 0j, 1e200, 1e200, 1e-200, 1e-200, 1e-200]))
    assert complex_det_lu(a) == pytest.approx(1.0, rel=1e-12)
    b = np.diag(np.array([1e-200 + 0j, 1e-200, 1e200, 1e200]))
    assert complex_det_lu(b) == pytest.approx(1.0, rel=1e-12)


def test_determinism():
    rng = np.random.default_rng(6)
    a = random_hermitian(rng, 20)
    d1 = hermitian_eigh(a)
    d2 = hermitian_eigh(a.copy())
    assert np.array_equal(d1.eigenvalues, d2.eigenvalues)
    assert np.array_equal(d1.eigenvectors, d2.eigenvectors)
