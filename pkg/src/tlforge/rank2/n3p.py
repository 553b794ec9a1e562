"""Rank-two solutions for n = 3p from 2x2 grids of p x p blocks.

    V_1 = [[0, F11, 0], [conj(G11), 0, conj(G12)], [0, F21, 0]]
    V_2 = [[0, F12, 0], [conj(G21), 0, conj(G22)], [0, F22, 0]]

with ``alpha_1 F`` and ``alpha_2 G`` unitary, ``1/alpha_1^2 + 1/alpha_2^2 = 1/p``
and, for p > 1, a compatibility relation between F and G.  Then
``Q = alpha_1 alpha_2 >= 2p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import SpanningSet, TLSolution
from ..linalg import DEFAULT_TOL, as_matrix, max_abs, permuted_diagonal, random_unitary, unitarity_residual
from ..permutations import Permutation, compose, permutation_matrix

__all__ = [
    "N3pBlocks",
    "N3pConstraintError",
    "alphas_from_ratio",
    "build_n3p",
    "n3p_from_unitary",
    "n3p_w_ansatz",
    "n3p_genperm",
    "solve_z2",
    "soln3",
    "soln4",
    "random_n3p_unitary",
    "random_n3p_w",
    "random_n3p_genperm",
]


class N3pConstraintError(ValueError):
    """A defining condition of the block family is violated; the message names it."""


def alphas_from_ratio(p: int, t: float) -> tuple[float, float]:
    """Positive ``(alpha_1, alpha_2)`` with ``1/alpha_1^2 + 1/alpha_2^2 = 1/p``.

    ``t`` in (0, 1) is the share ``p / alpha_1^2``; ``t = 1/2`` gives the
    minimum ``Q = 2p``.
    """
    if not 0 < t < 1:
        raise ValueError("t must lie strictly between 0 and 1")
    return math.sqrt(p / t), math.sqrt(p / (1 - t))


def _grid(blocks) -> tuple[tuple[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]:
    (a, b), (c, d) = blocks
    return (as_matrix(a), as_matrix(b)), (as_matrix(c), as_matrix(d))


@dataclass(frozen=True)
class N3pBlocks:
    p: int
    F: tuple
    G: tuple
    alpha1: float
    alpha2: float
    zeta: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "F", _grid(self.F))
        object.__setattr__(self, "G", _grid(self.G))
        for grid in (self.F, self.G):
            for row in grid:
                for blk in row:
                    if blk.shape != (self.p, self.p):
                        raise ValueError(f"every block must be {self.p}x{self.p}")
        object.__setattr__(self, "zeta", complex(self.zeta))

    @property
    def n(self) -> int:
        return 3 * self.p

    @property
    def Q(self) -> float:
        return self.alpha1 * self.alpha2

    def H1(self) -> np.ndarray:
        return self.alpha1 * np.block([list(r) for r in self.F])

    def H2(self) -> np.ndarray:
        return self.alpha2 * np.block([list(r) for r in self.G])

    def gamhh_sides(self) -> tuple[np.ndarray, np.ndarray]:
        (f11, f12), (f21, f22) = self.F
        (g11, g12), (g21, g22) = self.G
        return self.zeta * (g11 @ f12 + g12 @ f22), g21 @ f11 + g22 @ f21

    def violations(self, tol: float = DEFAULT_TOL) -> list[str]:
        out = []
        if self.alpha1 <= 0 or self.alpha2 <= 0:
            out.append("alpha1, alpha2 must be positive")
            return out
        if abs(self.alpha1**-2 + self.alpha2**-2 - 1 / self.p) > tol:
            out.append("betatr: 1/alpha1^2 + 1/alpha2^2 != 1/p")
        if unitarity_residual(self.H1()) > tol:
            out.append("Hpart: alpha1 F is not unitary")
        if unitarity_residual(self.H2()) > tol:
            out.append("Hpart: alpha2 G is not unitary")
        if self.p > 1:
            if abs(abs(self.zeta) - 1) > tol:
                out.append("gamHH: |zeta| != 1")
            lhs, rhs = self.gamhh_sides()
            if max_abs(lhs - rhs) > tol:
                out.append("gamHH: zeta (G11 F12 + G12 F22) != G21 F11 + G22 F21")
        return out

    def matrices(self) -> tuple[np.ndarray, np.ndarray]:
        p = self.p
        z = np.zeros((p, p), dtype=complex)
        (f11, f12), (f21, f22) = self.F
        (g11, g12), (g21, g22) = self.G
        v1 = np.block([[z, f11, z], [g11.conj(), z, g12.conj()], [z, f21, z]])
        v2 = np.block([[z, f12, z], [g21.conj(), z, g22.conj()], [z, f22, z]])
        return v1, v2


def build_n3p(blocks: N3pBlocks, family: str = "n3p", tol: float = DEFAULT_TOL, params=None) -> TLSolution:
    bad = blocks.violations(tol)
    if bad:
        raise N3pConstraintError("; ".join(bad))
    base = {"p": complex(blocks.p), "alpha1": complex(blocks.alpha1), "alpha2": complex(blocks.alpha2)}
    base.update(params or {})
    return TLSolution(SpanningSet(blocks.matrices()), blocks.Q, family, base)


def n3p_from_unitary(U, alpha1: float, alpha2: float, tol: float = DEFAULT_TOL) -> N3pBlocks:
    """``alpha_1 F_ij = U_ij`` and ``alpha_2 G_ij = (U_ji)^*``."""
    U = as_matrix(U)
    m = U.shape[0]
    if U.shape != (m, m) or m % 2:
        raise ValueError("U must be square of even size 2p")
    if unitarity_residual(U) > tol:
        raise N3pConstraintError("U is not unitary")
    p = m // 2
    blk = [[U[i * p:(i + 1) * p, j * p:(j + 1) * p] for j in range(2)] for i in range(2)]
    F = [[blk[i][j] / alpha1 for j in range(2)] for i in range(2)]
    G = [[blk[j][i].conj().T / alpha2 for j in range(2)] for i in range(2)]
    return N3pBlocks(p, F, G, alpha1, alpha2, 1.0)


def n3p_w_ansatz(F11, F22, G11, G22, w: complex, alpha1: float, alpha2: float, tol: float = DEFAULT_TOL) -> N3pBlocks:
    """Off-diagonal blocks tied to the diagonal ones through a single complex ``w``.

    ``F12 = -w F22``, ``F21 = conj(w) F11``, ``G12 = w G11``, ``G21 = -conj(w) G22``;
    the diagonal blocks must be unitary after scaling by
    ``beta_i = alpha_i sqrt(1 + |w|^2)``.
    """
    F11, F22, G11, G22 = (as_matrix(x) for x in (F11, F22, G11, G22))
    s = math.sqrt(1 + abs(w) ** 2)
    for name, blk, a in (("F11", F11, alpha1), ("F22", F22, alpha1), ("G11", G11, alpha2), ("G22", G22, alpha2)):
        if unitarity_residual(a * s * blk) > tol:
            raise N3pConstraintError(f"FG1: beta {name} is not unitary")
    wc = np.conj(w)
    F = [[F11, -w * F22], [wc * F11, F22]]
    G = [[G11, w * G11], [-wc * G22, G22]]
    return N3pBlocks(F11.shape[0], F, G, alpha1, alpha2, 1.0)


def n3p_genperm(
    sigma1: Permutation,
    sigma2: Permutation,
    D1,
    D2,
    D3,
    D4,
    Z1,
    Z2,
    zeta: complex,
    alpha1: float,
    alpha2: float,
    tol: float = DEFAULT_TOL,
) -> N3pBlocks:
    """Blocks built from permutation matrices on p symbols and diagonal matrices.

    ``F11 = P1 D1``, ``F12 = -P1 conj(D4) Z1``, ``F21 = P1 D4``, ``F22 = P1 conj(D1) Z1``,
    ``G11 = D2 P2``, ``G12 = D3 P2``, ``G21 = -Z2 conj(D3) P2``, ``G22 = Z2 conj(D2) P2``.
    Diagonals are given as vectors; ``Z1``, ``Z2`` must be unimodular.
    """
    d1, d2, d3, d4, z1, z2 = (np.asarray(x, dtype=complex).reshape(-1) for x in (D1, D2, D3, D4, Z1, Z2))
    p = sigma1.n
    if sigma2.n != p or any(len(x) != p for x in (d1, d2, d3, d4, z1, z2)):
        raise ValueError("all diagonals and permutations must act on p symbols")
    problems = []
    if max_abs(alpha1**2 * (abs(d1) ** 2 + abs(d4) ** 2) - 1) > tol:
        problems.append("Daa: alpha1^2 (|D1|^2 + |D4|^2) != I")
    if max_abs(alpha2**2 * (abs(d2) ** 2 + abs(d3) ** 2) - 1) > tol:
        problems.append("Daa: alpha2^2 (|D2|^2 + |D3|^2) != I")
    if max_abs(abs(z1) - 1) > tol or max_abs(abs(z2) - 1) > tol:
        problems.append("Z1, Z2 must be unitary diagonals")
    if abs(abs(zeta) - 1) > tol:
        problems.append("ZZss: |zeta| != 1")
    s21 = compose(sigma2, sigma1).image
    m = d3 * permuted_diagonal(d1, s21).conj() - d2 * permuted_diagonal(d4, s21).conj()
    if max_abs(zeta * m * permuted_diagonal(z1, s21) - z2 * m.conj()) > tol:
        problems.append("ZZss: zeta M Z1^(s2 s1) != Z2 conj(M)")
    if problems:
        raise N3pConstraintError("; ".join(problems))
    P1, P2 = permutation_matrix(sigma1), permutation_matrix(sigma2)
    dg = np.diag
    F = [[P1 @ dg(d1), -P1 @ dg(d4.conj() * z1)], [P1 @ dg(d4), P1 @ dg(d1.conj() * z1)]]
    G = [[dg(d2) @ P2, dg(d3) @ P2], [-dg(z2 * d3.conj()) @ P2, dg(z2 * d2.conj()) @ P2]]
    # Moving the diagonals through P2 P1 turns both sides of the block
    # compatibility relation into ``zeta M Z1^(s2 s1) P`` and ``-Z2 conj(M) P``,
    # so the relation holds with phase -zeta.
    return N3pBlocks(p, F, G, alpha1, alpha2, -zeta)


def solve_z2(sigma1: Permutation, sigma2: Permutation, D1, D2, D3, D4, Z1, zeta: complex) -> np.ndarray:
    """The unimodular ``Z2`` satisfying the compatibility relation, 1 where ``M`` vanishes."""
    d1, d2, d3, d4, z1 = (np.asarray(x, dtype=complex) for x in (D1, D2, D3, D4, Z1))
    s21 = compose(sigma2, sigma1).image
    m = d3 * permuted_diagonal(d1, s21).conj() - d2 * permuted_diagonal(d4, s21).conj()
    z2 = np.ones(len(m), dtype=complex)
    nz = np.abs(m) > 0
    z2[nz] = zeta * m[nz] * permuted_diagonal(z1, s21)[nz] / m[nz].conj()
    return z2



def soln3(z1: complex, z2: complex, w: complex, zeta1: complex, zeta2: complex) -> tuple[np.ndarray, np.ndarray]:
    """The 3x3 pair of the scalar w-ansatz; ``Q^-1 = |z1||z2|(1+|w|^2)``."""
    wc = np.conj(w)
    v1 = np.array([[0, z1, 0], [z2, 0, wc * z2], [0, wc * z1, 0]], dtype=complex)
    v2 = np.array([[0, -zeta1 * w * z1, 0], [-zeta2 * w * z2, 0, zeta2 * z2], [0, zeta1 * z1, 0]], dtype=complex)
    return v1, v2


def soln4(z1, z2, z3, z4, zeta1, zeta2) -> tuple[np.ndarray, np.ndarray]:
    """The generic p = 1 pair; ``Q^-2 = (|z1|^2+|z4|^2)(|z2|^2+|z3|^2)``."""
    c = np.conj
    v1 = np.array([[0, z1, 0], [z2, 0, z3], [0, z4, 0]], dtype=complex)
    v2 = np.array(
        [[0, -zeta1 * c(z4), 0], [-zeta2 * c(z3), 0, zeta2 * c(z2)], [0, zeta1 * c(z1), 0]], dtype=complex
    )
    return v1, v2


def _unimodular(rng: np.random.Generator, size=None):
    return np.exp(2j * np.pi * rng.uniform(size=size))


def random_n3p_unitary(p: int, rng: np.random.Generator, t: float | None = None) -> N3pBlocks:
    t = rng.uniform(0.05, 0.95) if t is None else t
    a1, a2 = alphas_from_ratio(p, t)
    return n3p_from_unitary(random_unitary(2 * p, rng), a1, a2)


def random_n3p_w(p: int, rng: np.random.Generator, t: float | None = None) -> N3pBlocks:
    t = rng.uniform(0.05, 0.95) if t is None else t
    a1, a2 = alphas_from_ratio(p, t)
    w = complex(rng.normal(), rng.normal())
    s = math.sqrt(1 + abs(w) ** 2)
    b1, b2 = a1 * s, a2 * s
    return n3p_w_ansatz(
        random_unitary(p, rng) / b1,
        random_unitary(p, rng) / b1,
        random_unitary(p, rng) / b2,
        random_unitary(p, rng) / b2,
        w,
        a1,
        a2,
    )


def random_n3p_genperm(p: int, rng: np.random.Generator, t: float | None = None) -> N3pBlocks:
    t = rng.uniform(0.05, 0.95) if t is None else t
    a1, a2 = alphas_from_ratio(p, t)
    s1 = Permutation(tuple(int(k) for k in rng.permutation(p)))
    s2 = Permutation(tuple(int(k) for k in rng.permutation(p)))
    th = rng.uniform(0.1, 1.4, size=p)
    ph = rng.uniform(0.1, 1.4, size=p)
    d1 = np.cos(th) * _unimodular(rng, p) / a1
    d4 = np.sin(th) * _unimodular(rng, p) / a1
    d2 = np.cos(ph) * _unimodular(rng, p) / a2
    d3 = np.sin(ph) * _unimodular(rng, p) / a2
    z1 = _unimodular(rng, p)
    zeta = complex(_unimodular(rng))
    z2 = solve_z2(s1, s2, d1, d2, d3, d4, z1, zeta)
    return n3p_genperm(s1, s2, d1, d2, d3, d4, z1, z2, zeta, a1, a2)
