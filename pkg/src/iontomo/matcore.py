"""Small dense complex linear algebra.

Matrices are plain ``numpy`` complex arrays. The Hermitian eigensolver is a
cyclic Jacobi sweep: every matrix handled by this package is at most
``4 * (n_max + 1)`` on a side, where Jacobi is both fast enough and very
accurate.
"""

from __future__ import annotations

import numpy as np

from .errors import BadDimension, NotHermitian

HERMITIAN_ATOL = 1e-10
JACOBI_TOL = 1e-13
MAX_SWEEPS = 60

SUBSYSTEMS = ("first", "second")


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise BadDimension(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_error(m) -> float:
    """Largest absolute entry of ``m - m^dagger``."""
    a = as_matrix(m)
    return float(np.max(np.abs(a - a.conj().T), initial=0.0))


def check_hermitian(m, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    a = as_matrix(m)
    err = hermiticity_error(a)
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    if err > atol * scale:
        raise NotHermitian(f"matrix is not Hermitian: max|H - H^dag| = {err:.3e}")
    return 0.5 * (a + a.conj().T)


def kron(a, b) -> np.ndarray:
    """Kronecker product with the first factor as the major index."""
    return np.kron(as_matrix(a), as_matrix(b))


def eigh(h, tol: float = JACOBI_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Args:
        h: Hermitian matrix (within ``1e-10``).
        tol: sweeps stop once the off-diagonal Frobenius norm is below
            ``tol * ||h||_F``.

    Returns:
        ``(w, v)`` with eigenvalues ``w`` ascending and the matching
        orthonormal eigenvectors as the columns of ``v``.

    Raises:
        NotHermitian: if ``h`` is not Hermitian.
    """
    a = check_hermitian(h).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    norm = np.linalg.norm(a)
    if norm == 0.0:
        return np.zeros(n), v
    threshold = tol * norm
    tiny = 1e-300

    for _ in range(MAX_SWEEPS):
        if np.linalg.norm(a - np.diag(np.diag(a))) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= tiny:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                cph = phase.conjugate()

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * cph * col_q
                a[:, q] = s * col_p + c * cph * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * cph * vq
                v[:, q] = s * vp + c * cph * vq

    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigvalsh(h) -> np.ndarray:
    return eigh(h)[0]


def unitary_from_hermitian(h, scale: float) -> np.ndarray:
    """Return ``exp(1j * scale * h)`` for Hermitian ``h``."""
    w, v = eigh(h)
    return (v * np.exp(1j * scale * w)) @ v.conj().T


def partial_transpose(m, subsystem: str = "second") -> np.ndarray:
    """Transpose one tensor factor of a two-qubit operator.

    Basis index ``i = 2*x1 + x2`` for ``|x1 x2>``.
    """
    a = as_matrix(m)
    if a.shape != (4, 4):
        raise BadDimension(f"partial transpose needs a 4x4 matrix, got {a.shape}")
    t = a.reshape(2, 2, 2, 2)
    if subsystem == "second":
        t = t.transpose(0, 3, 2, 1)
    elif subsystem == "first":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"subsystem must be one of {SUBSYSTEMS}, got {subsystem!r}")
    return t.reshape(4, 4).copy()
