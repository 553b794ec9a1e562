"""Dense complex matrix helpers and small Hermitian spectral routines.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  The
Hermitian eigensolver is a cyclic Jacobi iteration, which is more than fast
enough for the matrix sizes met in this package (n <= 64).
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "default_tol",
    "as_matrix",
    "kron",
    "dagger",
    "conj",
    "transpose",
    "max_abs",
    "unitarity_residual",
    "is_unitary_within",
    "hermitian_eigensystem",
    "singular_values",
    "determinant",
    "normal_eigensystem",
    "random_unitary",
    "basis_matrix",
    "permuted_diagonal",
]

DEFAULT_TOL = 1e-10


def default_tol() -> float:
    """Tolerance from ``TLFORGE_TOL`` if set, else :data:`DEFAULT_TOL`."""
    raw = os.environ.get("TLFORGE_TOL")
    if raw is None:
        return DEFAULT_TOL
    eps = float(raw)
    if not eps > 0:
        raise ValueError(f"TLFORGE_TOL must be positive, got {raw!r}")
    return eps


def as_matrix(a) -> np.ndarray:
    """Convert to a finite 2-d complex array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def conj(a) -> np.ndarray:
    return as_matrix(a).conj()


def transpose(a) -> np.ndarray:
    return as_matrix(a).T.copy()


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def basis_matrix(n: int, a: int, b: int) -> np.ndarray:
    """The matrix unit ``E_ab`` (0-based indices)."""
    e = np.zeros((n, n), dtype=np.complex128)
    e[a, b] = 1.0
    return e


def unitarity_residual(a) -> float:
    """max(||a a* - I||, ||a* a - I||) in the entrywise max norm."""
    m = _square(a)
    eye = np.eye(m.shape[0])
    return max(max_abs(m @ m.conj().T - eye), max_abs(m.conj().T @ m - eye))


def is_unitary_within(a, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    res = unitarity_residual(a)
    return res <= tol, res


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # R = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    r = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ r
    a[idx, :] = r.conj().T @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ r


def hermitian_eigensystem(a, tol: float = DEFAULT_TOL, max_sweeps: int = 60):
    """Eigenvalues (ascending) and unitary eigenvector matrix of a Hermitian matrix.

    Cyclic Jacobi: every sweep annihilates each off-diagonal pair in turn.
    Raises ``ValueError`` when ``a`` is not Hermitian within ``tol`` (scaled
    by the matrix magnitude).
    """
    m = _square(a)
    n = m.shape[0]
    scale = max(1.0, max_abs(m))
    if max_abs(m - m.conj().T) > tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    work = 0.5 * (m + m.conj().T)
    vecs = np.eye(n, dtype=np.complex128)
    if n == 1:
        return work.diagonal().real.copy(), vecs
    offmask = ~np.eye(n, dtype=bool)
    for sweep in range(max_sweeps):
        if not np.any(work[offmask]):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = abs(work[p, q])
                if apq == 0.0:
                    continue
                g = 100.0 * apq
                if sweep > 3 and abs(work[p, p]) + g == abs(work[p, p]) \
                        and abs(work[q, q]) + g == abs(work[q, q]):
                    work[p, q] = work[q, p] = 0.0
                    continue
                _jacobi_rotate(work, vecs, p, q)
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    vals = work.diagonal().real
    order = np.argsort(vals, kind="stable")
    return vals[order].copy(), vecs[:, order]


def singular_values(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Singular values in descending order, from the eigenvalues of ``a* a``."""
    m = _square(a)
    vals, _ = hermitian_eigensystem(m.conj().T @ m, tol=tol)
    return np.sqrt(np.clip(vals, 0.0, None))[::-1].copy()


def determinant(a) -> complex:
    # LAPACK LU with partial pivoting
    return complex(np.linalg.det(_square(a)))


def _clusters(vals: np.ndarray, gap: float) -> list[list[int]]:
    groups: list[list[int]] = [[0]]
    for k in range(1, len(vals)):
        if vals[k] - vals[k - 1] <= gap:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups


def normal_eigensystem(w, tol: float = DEFAULT_TOL, check: bool = True):
    """Eigenvalues and unitary eigenvectors of a normal matrix.

    The Hermitian parts ``H = (W + W*)/2`` and ``K = (W - W*)/2i`` commute when
    ``W`` is normal.  ``H`` is diagonalised first and ``K`` is then diagonalised
    on each (numerically) degenerate eigenspace of ``H``.  Eigenvalues are the
    Rayleigh quotients ``u* W u`` of the resulting columns.

    Returns ``None`` when ``check`` is set and ``W`` is not normal within ``tol``.
    """
    m = _square(w)
    scale = max(1.0, max_abs(m))
    if check and max_abs(m @ m.conj().T - m.conj().T @ m) > tol * scale * scale:
        return None
    h = 0.5 * (m + m.conj().T)
    k = (m - m.conj().T) / 2j
    hvals, hvecs = hermitian_eigensystem(h, tol=tol)
    cols = []
    gap = 1e3 * np.finfo(float).eps * scale * max(1, m.shape[0])
    gap = max(gap, 1e-9 * scale)
    for group in _clusters(hvals, gap):
        basis = hvecs[:, group]
        if len(group) == 1:
            cols.append(basis)
            continue
        kc = basis.conj().T @ k @ basis
        _, kv = hermitian_eigensystem(0.5 * (kc + kc.conj().T), tol=max(tol, 1e-8))
        cols.append(basis @ kv)
    vecs = np.hstack(cols)
    vals = np.einsum("ij,ik,kj->j", vecs.conj(), m, vecs)
    return vals, vecs


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """QR of a complex Gaussian matrix, with the phases of R absorbed."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = r.diagonal()
    return q * (d / np.abs(d))


def permuted_diagonal(diag, image) -> np.ndarray:
    """Diagonal of ``P_s D P_s^t`` given ``diag(D)`` and the 0-based image of s.

    Entry ``k`` of the result is ``diag[s^{-1}(k)]``.
    """
    diag = np.asarray(diag)
    out = np.empty_like(diag)
    out[np.asarray(image)] = diag
    return out
