"""Rank-one representations.

Every rank-one solution is unitarily congruent to a generalized permutation
matrix ``V = D P_s`` where ``s`` is an involution with ``n mod 2`` fixed
points, ``sum |z_k|^2 = 1`` and ``z_k z_{s(k)} = 1/Q`` for ``D = diag(z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SpanningSet, TLSolution, VerificationReport, congruence_fingerprint
from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    determinant,
    max_abs,
    normal_eigensystem,
    singular_values,
)
from .permutations import Permutation, fixed_points, from_cycles, permutation_matrix

__all__ = [
    "Rank1Params",
    "Rank1NormalForm",
    "antidiagonal_involution",
    "build_rank1",
    "rank1_from_u",
    "rank1_from_diagonal",
    "verify_rank1",
    "spectral_pairing_check",
    "reduce_to_normal_form",
    "DegenerateSpectrumError",
    "congruence_necessary_check",
    "example1_v",
    "example1_generator",
]


class DegenerateSpectrumError(ValueError):
    """Raised when ``V conj(V)`` has a repeated eigenvalue."""


def antidiagonal_involution(n: int) -> Permutation:
    """``(1,n)(2,n-1)...``, with a fixed middle point for odd n."""
    return from_cycles(n, [(k, n + 1 - k) for k in range(1, n // 2 + 1)])


def _pairs(sigma: Permutation) -> tuple[list[tuple[int, int]], list[int]]:
    """2-cycles as (first, second) 0-based index pairs, and fixed points."""
    pairs, fixed = [], []
    for k in range(sigma.n):
        j = sigma.image[k]
        if j == k:
            fixed.append(k)
        elif k < j:
            pairs.append((k, j))
    return pairs, fixed


def _check_sigma(sigma: Permutation) -> None:
    if not sigma.is_involution():
        raise ValueError(f"{sigma} is not an involution")
    nfix = len(fixed_points(sigma))
    if nfix != sigma.n % 2:
        raise ValueError(f"{sigma} must have exactly n mod 2 = {sigma.n % 2} fixed points, has {nfix}")


@dataclass(frozen=True)
class Rank1Params:
    """Free data of the normal form: one nonzero ``z`` per 2-cycle of ``sigma``.

    ``free_z[i]`` sits on the smaller index of the i-th 2-cycle (cycles ordered
    by their smaller index); ``sign_choice`` fixes the sign of the entry at the
    fixed point when n is odd.
    """

    sigma: Permutation
    free_z: tuple[complex, ...]
    sign_choice: int = 1

    def __post_init__(self):
        _check_sigma(self.sigma)
        z = tuple(complex(v) for v in self.free_z)
        if len(z) != self.sigma.n // 2:
            raise ValueError(f"need {self.sigma.n // 2} free z values, got {len(z)}")
        if any(v == 0 for v in z):
            raise ValueError("free z values must be nonzero")
        if self.sign_choice not in (1, -1):
            raise ValueError("sign_choice must be +1 or -1")
        object.__setattr__(self, "free_z", z)

    @property
    def n(self) -> int:
        return self.sigma.n


@dataclass(frozen=True)
class Rank1NormalForm:
    D: np.ndarray
    sigma: Permutation
    Q: float
    g: np.ndarray | None = None

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.D) @ permutation_matrix(self.sigma)

    def residuals(self) -> dict[str, float]:
        d = self.D
        return {
            "trace": abs(np.sum(np.abs(d) ** 2) - 1.0),
            "inverse": max_abs(1.0 / d - self.Q * d[list(self.sigma.image)]),
            "sigma": 0.0 if self.sigma.is_involution() and len(fixed_points(self.sigma)) == self.sigma.n % 2 else 1.0,
        }


def rank1_from_diagonal(D, sigma: Permutation, Q: float, family: str = "rank1-normal", params=None) -> TLSolution:
    V = np.diag(np.asarray(D, dtype=complex)) @ permutation_matrix(sigma)
    return TLSolution(SpanningSet([V]), Q, family, dict(params or {}))


def build_rank1(p: Rank1Params) -> TLSolution:
    """Complete the normal form from the free entries and solve for Q.

    Writing ``y = 1/Q``, the normalisation reads
    ``R y^2 + (n mod 2) y + S - 1 = 0`` with ``S = sum |z|^2`` and
    ``R = sum |z|^-2`` over the free entries; the positive root is taken.
    """
    z = np.array(p.free_z)
    S = float(np.sum(np.abs(z) ** 2))
    R = float(np.sum(np.abs(z) ** -2))
    odd = p.n % 2
    if S >= 1.0:
        raise ValueError(f"normalisation unsolvable: sum |z|^2 = {S} must be < 1")
    if R == 0:
        # n = 1
        y = 1.0
    else:
        disc = odd + 4.0 * R * (1.0 - S)
        y = 2.0 * (1.0 - S) / (odd + math.sqrt(disc))
    Q = 1.0 / y
    D = np.zeros(p.n, dtype=complex)
    pairs, fixed = _pairs(p.sigma)
    for (a, b), za in zip(pairs, z):
        D[a] = za
        D[b] = 1.0 / (Q * za)
    for k in fixed:
        D[k] = p.sign_choice / math.sqrt(Q)
    params = {f"z{a + 1}": complex(za) for (a, _), za in zip(pairs, z)}
    return rank1_from_diagonal(D, p.sigma, Q, params=params)


def rank1_from_u(sigma: Permutation, u, sign_choice: int = 1) -> TLSolution:
    """Scale-free parametrisation: ``z_a = u/sqrt(Q)``, ``z_b = 1/(u sqrt(Q))``.

    Here ``Q = sum (|u|^2 + |u|^-2) + (n mod 2)``; for n = 2 this is the
    familiar ``Q = |u|^2 + |u|^-2``.
    """
    _check_sigma(sigma)
    u = np.atleast_1d(np.asarray(u, dtype=complex))
    pairs, fixed = _pairs(sigma)
    if len(u) != len(pairs):
        raise ValueError(f"need {len(pairs)} values of u, got {len(u)}")
    if np.any(u == 0):
        raise ValueError("u values must be nonzero")
    Q = float(np.sum(np.abs(u) ** 2 + np.abs(u) ** -2)) + len(fixed)
    s = math.sqrt(Q)
    D = np.zeros(sigma.n, dtype=complex)
    for (a, b), ua in zip(pairs, u):
        D[a] = ua / s
        D[b] = 1.0 / (ua * s)
    for k in fixed:
        D[k] = sign_choice / s
    params = {f"u{i + 1}": complex(v) for i, v in enumerate(u)}
    return rank1_from_diagonal(D, sigma, Q, params=params)


def example1_v(q, zeta) -> np.ndarray:
    """Coefficient matrix of the classic 4x4 rank-one solution."""
    return np.array([[0, zeta * q], [1, 0]], dtype=complex) / np.sqrt(q * q + 1)


def example1_generator(q, zeta) -> np.ndarray:
    """The 4x4 generator with middle block ``[[q, zeta], [1/zeta, 1/q]]``.

    Its entries are rational in ``q`` and ``zeta`` so it is also meaningful
    (as a non-hermitian solution) for complex values.
    """
    T = np.zeros((4, 4), dtype=complex)
    T[1, 1], T[1, 2], T[2, 1], T[2, 2] = q, zeta, 1 / zeta, 1 / q
    return T


def _is_almost_unitary(V, rel: float = 1e-8) -> bool:
    sv = singular_values(V)
    return sv[0] > 0 and (sv[0] - sv[-1]) <= rel * sv[0]


def verify_rank1(V, Q: float, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``tr(V*V) = 1``, ``V conj(V) V^t V* = Q^-2 I`` and ``Q >= n``."""
    V = as_matrix(V)
    n = V.shape[0]
    rep = VerificationReport()
    rep.record("trace", abs(np.trace(V.conj().T @ V) - 1.0), tol)
    rep.record("vv22", max_abs(V @ V.conj() @ V.T @ V.conj().T - np.eye(n) / Q**2), tol)
    rep.record("q_bound", max(0.0, n - Q), tol * n)
    if _is_almost_unitary(V):
        rep.record("q_equality", abs(Q - n), tol * n)
        rep.notes.append("almost unitary: Q = n expected")
    return rep


def spectral_pairing_check(V, Q: float, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Singular values pair to ``1/Q``; eigenvalues of ``Q V conj(V)`` pair to conjugates."""
    V = as_matrix(V)
    upstream = verify_rank1(V, Q, tol)
    if not upstream.passed:
        raise ValueError(f"not a rank-one solution: {upstream.failed_checks()}")
    n = V.shape[0]
    rep = VerificationReport()
    sv = singular_values(V, tol=tol)
    rep.record("singular_pairing", max_abs(sv * sv[::-1] - 1.0 / Q), tol)
    if n % 2:
        rep.record("middle_singular", abs(sv[n // 2] - Q ** -0.5), tol)
    eig = normal_eigensystem(Q * V @ V.conj(), tol=tol)
    if eig is None:
        rep.fail("Q V conj(V) is not normal")
        return rep
    vals = eig[0]
    rep.record("eig_modulus", max_abs(np.abs(vals) - 1.0), tol)
    rep.record("eig_conjugate_pairs", _pairing_defect(vals), 10 * tol)
    rep.record("det_one", abs(np.prod(vals) - 1.0), 10 * tol * n)
    return rep


def _pairing_defect(vals) -> float:
    """How far a multiset is from being closed under conjugation.

    For odd length the eigenvalue closest to 1 is set aside and its distance
    from 1 counts towards the defect.
    """
    rest = list(vals)
    worst = 0.0
    if len(rest) % 2:
        k = int(np.argmin([abs(x - 1.0) for x in rest]))
        worst = abs(rest.pop(k) - 1.0)
    while rest:
        x = rest.pop(0)
        d = [abs(np.conj(x) - y) for y in rest]
        k = int(np.argmin(d))
        worst = max(worst, d[k])
        rest.pop(k)
    return worst


def reduce_to_normal_form(V, Q: float, tol: float = DEFAULT_TOL) -> Rank1NormalForm:
    """Unitary ``g`` and ``(D, s)`` with ``g V g^t = D P_s``, for simple spectrum.

    Diagonalise ``Q V conj(V) = U W U*`` and set ``g0 = U*``: then
    ``V0 = g0 V g0^t`` is supported on ``(a, s(a))`` where ``W_a W_{s(a)} = 1``.
    A diagonal unitary gauge ``h`` with ``h_a = h_{s(a)}`` then makes
    ``Q D_a D_{s(a)} = 1``.
    """
    V = as_matrix(V)
    upstream = verify_rank1(V, Q, tol)
    if not upstream.passed:
        raise ValueError(f"not a rank-one solution: {upstream.failed_checks()}")
    n = V.shape[0]
    eig = normal_eigensystem(Q * V @ V.conj(), tol=tol)
    if eig is None:
        raise ValueError("Q V conj(V) is not normal")
    w, U = eig
    gap = min((abs(w[i] - w[j]) for i in range(n) for j in range(i + 1, n)), default=np.inf)
    if gap <= math.sqrt(tol):
        raise DegenerateSpectrumError(
            f"spectrum of V conj(V) is degenerate (min gap {gap:.2e}); compare fingerprints instead"
        )
    # pair each eigenvalue with its conjugate
    image = [-1] * n
    for a in range(n):
        target = np.conj(w[a])
        b = int(np.argmin(np.abs(w - target)))
        if abs(w[b] - target) > math.sqrt(tol):
            raise ValueError("eigenvalues of Q V conj(V) do not pair up")
        image[a] = b
    sigma = Permutation(tuple(image))
    if not sigma.is_involution():
        raise ValueError("eigenvalue pairing is not an involution")
    g0 = U.conj().T
    V0 = g0 @ V @ g0.T
    D0 = np.array([V0[a, image[a]] for a in range(n)])
    # gauge: h_a^2 = H_a with H_a^2 = Q D0_a D0_{s(a)}
    H2 = Q * D0 * D0[image]
    h = np.exp(1j * np.angle(H2) / 4.0)
    D = D0 / h**2
    g = np.diag(1.0 / h) @ g0
    return Rank1NormalForm(D, sigma, float(Q), g)


def congruence_necessary_check(A, B, tol: float = DEFAULT_TOL) -> tuple[bool, str]:
    """Necessary conditions for ``A = g B g^t`` with unitary g.

    Returns ``(True, "not distinguished")`` when no invariant separates the
    two matrices; that is not a proof of congruence.
    """
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        return False, "dimension"
    for name, m in (("A", A), ("B", B)):
        if abs(determinant(m)) <= tol:
            raise ValueError(f"{name} is singular")
    fa, fb = congruence_fingerprint(A, tol), congruence_fingerprint(B, tol)
    return fa.matches(fb, tol=max(1e-8, 100 * tol))
