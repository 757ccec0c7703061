"""Dense Hermitian eigendecomposition and complex LU determinant.

Thin, contract-enforcing wrappers around LAPACK (via numpy): zheevd-style
eigendecomposition for Hermitian fibers and LU with partial pivoting for
determinants, accumulated in log magnitude + phase so nothing overflows.
The test suite carries an independent cyclic-Jacobi eigensolver as a slow
reference oracle for these kernels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fiber import FiberMatrix


@dataclass(frozen=True)
class EigenDecomposition:
    """Full Hermitian spectrum, eigenvalues ascending, orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, FiberMatrix):
        m = m.entries
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError("matrix has non-finite entries")
    return a


def hermitian_eigh(m) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix (FiberMatrix or ndarray).

    The input must be Hermitian to 1e-12 relative; it is symmetrized before
    the solve so the output is deterministic for identical input bits.
    """
    a = _as_matrix(m)
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    asym = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if asym > 1e-12 * max(scale, 1e-300):
        raise ValueError(f"matrix is not Hermitian: max asymmetry {asym:.3e}")
    a = 0.5 * (a + a.conj().T)
    w, v = np.linalg.eigh(a)
    return EigenDecomposition(w, v)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Eigenvalues only (ascending); saves the vector workspace on sweeps."""
    a = _as_matrix(m)
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    asym = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if asym > 1e-12 * max(scale, 1e-300):
        raise ValueError(f"matrix is not Hermitian: max asymmetry {asym:.3e}")
    a = 0.5 * (a + a.conj().T)
    return np.linalg.eigvalsh(a)


def complex_det_lu(m) -> complex:
    """Determinant via LU with partial pivoting.

    Accumulated as log magnitude + phase, exponentiated last; an exactly
    singular matrix yields 0.
    """
    a = _as_matrix(m)
    sign, logabs = np.linalg.slogdet(a)
    if sign == 0:
        return 0.0 + 0.0j
    return complex(sign * np.exp(logabs))
