"""Rank-two solutions built from pairs of generalized permutation matrices.

``V_1 = D_1 P_{s1}``, ``V_2 = D_2 P_{s2}`` with nonsingular diagonal ``D_i``.
For such pairs the unitarity conditions reduce to two diagonal identities and
one matrix identity, which :func:`check_deq_system` evaluates directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..core import SpanningSet, TLSolution, VerificationReport, verify_by_criterion
from ..linalg import DEFAULT_TOL, max_abs, permuted_diagonal
from ..permutations import (
    Permutation,
    PermutationPair,
    commute,
    compose,
    fixed_points,
    from_cycles,
    inverse,
    is_admissible_pair,
    parse_cycles,
    permutation_matrix,
)
from .exact import odd_vector_in_column_space

__all__ = [
    "Rank2System",
    "check_deq_system",
    "deq3_lhs",
    "FixPCertificate",
    "lemma_fixp_certificate",
    "ab_matrices",
    "satisfies_zzeq0",
    "DdssData",
    "OddConditionUnsolvable",
    "solve_odd_condition",
    "odd_vector",
    "build_ddss",
    "ssigma1",
    "ssigma2",
    "ssigma3",
    "alternating_x",
    "build_vvn4k",
    "vvn4k_zpar",
    "build_vvn4",
    "CatalogEntry",
    "S4_CASES",
    "s4_catalog",
    "build_complementary",
]


def _diag_action(d, s: Permutation) -> np.ndarray:
    return permuted_diagonal(d, s.image)


@dataclass(frozen=True)
class Rank2System:
    sigma1: Permutation
    sigma2: Permutation
    D1: np.ndarray
    D2: np.ndarray

    def __post_init__(self):
        d1 = np.asarray(self.D1, dtype=complex)
        d2 = np.asarray(self.D2, dtype=complex)
        n = self.sigma1.n
        if self.sigma2.n != n or d1.shape != (n,) or d2.shape != (n,):
            raise ValueError("permutations and diagonals must share the dimension")
        if np.any(d1 == 0) or np.any(d2 == 0):
            raise ValueError("D1 and D2 must be nonsingular")
        object.__setattr__(self, "D1", d1)
        object.__setattr__(self, "D2", d2)

    @property
    def n(self) -> int:
        return self.sigma1.n

    @property
    def pair(self) -> PermutationPair:
        return PermutationPair(self.sigma1, self.sigma2)

    def matrices(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.diag(self.D1) @ permutation_matrix(self.sigma1),
            np.diag(self.D2) @ permutation_matrix(self.sigma2),
        )

    def to_solution(self, Q: float, family: str, params=None) -> TLSolution:
        return TLSolution(SpanningSet(self.matrices()), Q, family, dict(params or {}))


def deq3_lhs(sys: Rank2System) -> np.ndarray:
    """Left-hand side of the matrix identity that must vanish."""
    s1, s2 = sys.sigma1, sys.sigma2
    d1, d2 = sys.D1, sys.D2
    pair = sys.pair
    p1 = permutation_matrix(pair.sigma_prime())
    p2 = permutation_matrix(pair.sigma_double_prime())
    term1 = np.diag(d1 * _diag_action(d1, s1).conj()) @ p1 @ np.diag(_diag_action(d2, s1) * d1.conj())
    term2 = np.diag(d2 * _diag_action(d1, s2).conj()) @ p2 @ np.diag(_diag_action(d2, s2) * d2.conj())
    return term1 + term2


def check_deq_system(sys: Rank2System, Q: float, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Evaluate the diagonal form of the rank-two conditions for ``D P`` pairs."""
    rep = VerificationReport()
    s1, s2 = sys.sigma1, sys.sigma2
    a1, a2 = np.abs(sys.D1) ** 2, np.abs(sys.D2) ** 2
    rep.record("trdd12a", max(abs(a1.sum() - 1), abs(a2.sum() - 1)), tol)
    quotient = compose(s1, inverse(s2))
    fix = [k for k in range(sys.n) if quotient.image[k] == k]
    rep.record("trdd12b", abs(np.sum((sys.D1 * sys.D2.conj())[fix])), tol)
    target = Q**-2
    rep.record("deq1", max_abs(a1 * _diag_action(a1, s1) + a2 * _diag_action(a1, s2) - target), tol)
    rep.record("deq2", max_abs(a1 * _diag_action(a2, s1) + a2 * _diag_action(a2, s2) - target), tol)
    pair = sys.pair
    if pair.sigma_prime() != pair.sigma_double_prime():
        rep.fail("structural: sigma' != sigma''")
    rep.record("deq3", max_abs(deq3_lhs(sys)), tol)
    return rep


@dataclass(frozen=True)
class FixPCertificate:
    pair: PermutationPair
    reason: str
    entry: tuple[int, int]
    min_abs_entry: float
    floor: float
    min_deq3_norm: float
    trials: int

    @property
    def certified(self) -> bool:
        return self.min_abs_entry >= self.floor > 0 and self.min_deq3_norm > 0


def _fixp_entry(pair: PermutationPair, reason: str) -> tuple[int, int, str]:
    """0-based entry of the matrix identity that cannot vanish, and its kind.

    A common fixed point ``i`` pins entry ``(i, i)``; a fixed point ``k`` of
    ``s2^-1 o s1`` pins ``(s1(k), s1(k))``.
    """
    sp, spp = pair.sigma_prime(), pair.sigma_double_prime()
    if reason == "ssss":
        # (P_s')_{ij} = 1 with (P_s'')_{ij} = 0, i.e. i = s'(j) != s''(j)
        j = next(k for k in range(pair.n) if sp.image[k] != spp.image[k])
        return sp.image[j], j, "ssss"
    kind, point = reason.split()
    i = int(point) - 1
    if kind == "fixed-point-of-quotient":
        i = pair.first.image[i]
    return i, i, kind


def lemma_fixp_certificate(
    pair: PermutationPair,
    trials: int = 1000,
    rng: np.random.Generator | None = None,
    modulus_range: tuple[float, float] = (0.1, 1.0),
) -> FixPCertificate:
    """Certify on random nonsingular diagonals that a non-admissible pair has no solution.

    The violated admissibility clause pins one entry of the matrix identity
    whose modulus is a product of |D| entries (times a sum of squares for the
    fixed-point clauses), so it is bounded below by ``lo^4`` (resp. ``2 lo^4``)
    when every |D| entry is at least ``lo``.  Each trial evaluates the full
    left-hand side and checks the pinned entry against that floor.
    """
    ok, reason = is_admissible_pair(pair)
    if ok:
        raise ValueError(f"pair ({pair}) is admissible; nothing to certify")
    rng = rng or np.random.default_rng(0)
    lo, hi = modulus_range
    i, j, kind = _fixp_entry(pair, reason)
    floor = lo**4 if kind == "ssss" else 2 * lo**4
    n = pair.n
    s1inv = inverse(pair.first).image
    min_entry = np.inf
    min_norm = np.inf
    for _ in range(trials):
        d1 = rng.uniform(lo, hi, n) * np.exp(2j * np.pi * rng.uniform(size=n))
        d2 = rng.uniform(lo, hi, n) * np.exp(2j * np.pi * rng.uniform(size=n))
        lhs = deq3_lhs(Rank2System(pair.first, pair.second, d1, d2))
        entry = lhs[i, j]
        if kind == "common-fixed-point":
            formula = (abs(d1[i]) ** 2 + abs(d2[i]) ** 2) * d1[i].conj() * d2[i]
        elif kind == "fixed-point-of-quotient":
            k = s1inv[i]
            formula = (abs(d1[i]) ** 2 + abs(d2[i]) ** 2) * d1[k].conj() * d2[k]
        else:
            k = s1inv[i]
            formula = d1[i] * d1[k].conj() * d2[s1inv[j]] * d1[j].conj()
        if abs(entry - formula) > 1e-12:
            raise AssertionError(f"pinned entry {entry} disagrees with its closed form {formula}")
        min_entry = min(min_entry, abs(entry))
        min_norm = min(min_norm, max_abs(lhs))
    return FixPCertificate(pair, reason, (i + 1, j + 1), float(min_entry), floor, float(min_norm), trials)


def ab_matrices(sigma1: Permutation, sigma2: Permutation) -> tuple[np.ndarray, np.ndarray]:
    """Integer matrices ``A = (I + P2)(P2 - P1)`` and ``B = (I + P1)(P1 - P2)``."""
    p1 = permutation_matrix(sigma1).astype(np.int64)
    p2 = permutation_matrix(sigma2).astype(np.int64)
    eye = np.eye(sigma1.n, dtype=np.int64)
    return (eye + p2) @ (p2 - p1), (eye + p1) @ (p1 - p2)


def satisfies_zzeq0(sigma1: Permutation, sigma2: Permutation) -> bool:
    """s1 commutes with s2 o s2 and s2 commutes with s1 o s1."""
    return commute(sigma1, compose(sigma2, sigma2)) and commute(sigma2, compose(sigma1, sigma1))


def odd_vector(sigma1: Permutation, sigma2: Permutation, u, v) -> list[Fraction]:
    """``A u + B v`` in exact arithmetic."""
    a, b = ab_matrices(sigma1, sigma2)
    u = [Fraction(x) for x in u]
    v = [Fraction(x) for x in v]
    n = sigma1.n
    return [
        sum(int(a[i, k]) * u[k] for k in range(n)) + sum(int(b[i, k]) * v[k] for k in range(n))
        for i in range(n)
    ]


def _all_odd(w) -> bool:
    return all(Fraction(x).denominator == 1 and int(x) % 2 == 1 for x in w)


class OddConditionUnsolvable(ValueError):
    """No rational u, v make ``A u + B v`` a vector of odd integers."""


def solve_odd_condition(sigma1: Permutation, sigma2: Permutation) -> tuple[list[Fraction], list[Fraction]]:
    """Rational ``u, v`` with every component of ``A u + B v`` an odd integer.

    The search is exact and complete: :class:`OddConditionUnsolvable` means no
    such vectors exist.
    """
    if not satisfies_zzeq0(sigma1, sigma2):
        raise ValueError("pair does not satisfy the commutation conditions zzeq0")
    a, b = ab_matrices(sigma1, sigma2)
    m = np.hstack([a, b]).tolist()
    found = odd_vector_in_column_space(m)
    if found is None:
        raise OddConditionUnsolvable(f"no rational u, v give an odd vector for ({sigma1}, {sigma2})")
    w, y = found
    n = sigma1.n
    u, v = list(y[:n]), list(y[n:])
    if not _all_odd(odd_vector(sigma1, sigma2, u, v)):
        raise AssertionError("solver returned vectors that fail the parity check")
    return u, v


@dataclass(frozen=True)
class DdssData:
    sigma1: Permutation
    sigma2: Permutation
    x: tuple[float, ...]
    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(t) for t in self.x))
        object.__setattr__(self, "u", tuple(Fraction(t) for t in self.u))
        object.__setattr__(self, "v", tuple(Fraction(t) for t in self.v))

    @property
    def n(self) -> int:
        return self.sigma1.n

    @property
    def mu(self) -> float:
        return math.sqrt(sum(math.exp(2 * t) for t in self.x))

    def violations(self, tol: float = 1e-12) -> list[str]:
        out = []
        n = self.n
        if n % 2:
            out.append("n must be even")
        if self.sigma2.n != n or len(self.x) != n or len(self.u) != n or len(self.v) != n:
            return out + ["dimension mismatch"]
        if not satisfies_zzeq0(self.sigma1, self.sigma2):
            out.append("zzeq0: s1 must commute with s2^2 and s2 with s1^2")
        if fixed_points(compose(inverse(self.sigma2), self.sigma1)):
            out.append("s2^-1 o s1 has fixed points")
        x = np.array(self.x)
        for name, s in (("s1", self.sigma1), ("s2", self.sigma2)):
            if max_abs(permutation_matrix(s) @ x + x) > tol * max(1.0, max_abs(x)):
                out.append(f"ppx: P_{name} x != -x")
        if not _all_odd(odd_vector(self.sigma1, self.sigma2, self.u, self.v)):
            out.append("ABsub: A u + B v is not a vector of odd integers")
        return out


def build_ddss(d: DdssData, family: str = "ddss") -> TLSolution:
    """``(D_i)_kk = mu^-1 exp(x_k + i pi u_k)`` (``v_k`` for D_2), ``Q = mu^2 / sqrt 2``."""
    bad = d.violations()
    if bad:
        raise ValueError("; ".join(bad))
    x = np.array(d.x)
    u = np.array([float(t) for t in d.u])
    v = np.array([float(t) for t in d.v])
    mu = d.mu
    d1 = np.exp(x + 1j * np.pi * u) / mu
    d2 = np.exp(x + 1j * np.pi * v) / mu
    Q = mu**2 / math.sqrt(2)
    params = {f"x{k + 1}": complex(t) for k, t in enumerate(d.x)}
    return Rank2System(d.sigma1, d.sigma2, d1, d2).to_solution(Q, family, params)


def ssigma1(n: int) -> tuple[Permutation, Permutation]:
    """``(1,...,n)`` and ``(n,...,1)``."""
    s1 = from_cycles(n, [tuple(range(1, n + 1))])
    return s1, inverse(s1)


def ssigma2(n: int) -> tuple[Permutation, Permutation]:
    """``(1,n)(2,n-1)...`` and ``(1,2)(3,4)...``."""
    s1 = from_cycles(n, [(k, n + 1 - k) for k in range(1, n // 2 + 1)])
    s2 = from_cycles(n, [(k, k + 1) for k in range(1, n, 2)])
    return s1, s2


def ssigma3(n: int) -> tuple[Permutation, Permutation]:
    """``(1,...,n)`` and ``(1,2)(3,4)...``."""
    return from_cycles(n, [tuple(range(1, n + 1))]), from_cycles(n, [(k, k + 1) for k in range(1, n, 2)])


def alternating_x(n: int, x: float) -> tuple[float, ...]:
    return tuple(x if k % 2 == 0 else -x for k in range(n))


def _diag4(n: int, pattern) -> np.ndarray:
    return np.array([pattern[k % 4] for k in range(n)], dtype=complex)


def _check_n4l(n: int) -> None:
    if n <= 0 or n % 4:
        raise ValueError(f"n must be a positive multiple of 4 (got {n})")


_VVN4K_SIGMAS = {"ssigma1": ssigma1, "ssigma2": ssigma2}


def build_vvn4k(n: int, which_sigma: str, z1: complex, z2: complex, zeta: complex, tol: float = DEFAULT_TOL) -> TLSolution:
    """Period-4 diagonals ``(z1, z2, z1, z2)`` and ``(z1, -zeta z2, z1, zeta z2)``.

    Requires ``|zeta| = 1``, ``z1 z2 != 0`` and ``|z1|^2 + |z2|^2 = 2/n``;
    then ``Q = 1 / (sqrt 2 |z1| |z2|)``.
    """
    _check_n4l(n)
    if which_sigma not in _VVN4K_SIGMAS:
        raise ValueError(f"which_sigma must be one of {sorted(_VVN4K_SIGMAS)}")
    if abs(abs(zeta) - 1) > tol:
        raise ValueError("zzet1: |zeta| != 1")
    if z1 == 0 or z2 == 0:
        raise ValueError("zzet1: z1 z2 must be nonzero")
    if abs(abs(z1) ** 2 + abs(z2) ** 2 - 2 / n) > tol:
        raise ValueError("zzet1: |z1|^2+|z2|^2 != 2/n")
    s1, s2 = _VVN4K_SIGMAS[which_sigma](n)
    d1 = _diag4(n, (z1, z2, z1, z2))
    d2 = _diag4(n, (z1, -zeta * z2, z1, zeta * z2))
    Q = 1 / (math.sqrt(2) * abs(z1) * abs(z2))
    tag = "vvn4k-s1" if which_sigma == "ssigma1" else "vvn4k-s2"
    params = {"z1": complex(z1), "z2": complex(z2), "zeta": complex(zeta)}
    return Rank2System(s1, s2, d1, d2).to_solution(Q, tag, params)


def vvn4k_zpar(n: int, which_sigma: str, q: complex, xi1: complex = 1, xi2: complex = 1, zeta: complex = 1) -> TLSolution:
    """The ``vvn4k`` family in the ``q`` parametrisation, continued to complex values.

    ``z1 = sqrt(2/n) q xi1 / sqrt(q^2+1)``, ``z2 = sqrt(2/n) xi2 / sqrt(q^2+1)``
    and ``Q = n sqrt 2 (q + 1/q) / 4``.  The conjugated coefficients entering
    the projector are replaced by their rational continuations (``q`` kept,
    ``xi``, ``zeta`` inverted), so for real ``q > 0`` and unimodular phases
    this is the hermitian solution and otherwise a non-hermitian one.
    """
    _check_n4l(n)
    if which_sigma not in _VVN4K_SIGMAS:
        raise ValueError(f"which_sigma must be one of {sorted(_VVN4K_SIGMAS)}")
    q, xi1, xi2, zeta = (complex(t) for t in (q, xi1, xi2, zeta))
    if 0 in (q, xi1, xi2, zeta):
        raise ValueError("q, xi1, xi2, zeta must be nonzero")
    s1, s2 = _VVN4K_SIGMAS[which_sigma](n)
    root = np.sqrt(q * q + 1)
    c = math.sqrt(2 / n) / root

    def mats(x1, x2, zt):
        z1, z2 = c * q * x1, c * x2
        d1 = _diag4(n, (z1, z2, z1, z2))
        d2 = _diag4(n, (z1, -zt * z2, z1, zt * z2))
        return [np.diag(d1) @ permutation_matrix(s1), np.diag(d2) @ permutation_matrix(s2)]

    Q = n * math.sqrt(2) * (q + 1 / q) / 4
    tag = "vvn4k-zpar-s1" if which_sigma == "ssigma1" else "vvn4k-zpar-s2"
    params = {"q": q, "xi1": xi1, "xi2": xi2, "zeta": zeta}
    hermitian = abs(q.imag) == 0 and q.real > 0 and all(abs(abs(t) - 1) < 1e-14 for t in (xi1, xi2, zeta))
    if hermitian:
        return TLSolution(SpanningSet(mats(xi1, xi2, zeta)), Q.real, tag, params)
    duals = SpanningSet(mats(1 / xi1, 1 / xi2, 1 / zeta))
    return TLSolution(SpanningSet(mats(xi1, xi2, zeta)), Q, tag, params, duals=duals)


def build_vvn4(n: int, z1: complex, z2: complex, z3: complex, zeta: complex, tol: float = DEFAULT_TOL) -> TLSolution:
    """Diagonals ``(z1, z2, z1, z3)`` and ``(z1, -zeta conj(z3), z1, zeta conj(z2))``
    on ``(1,...,n)``, ``(1,2)(3,4)...``.

    Requires ``|zeta| = 1``, ``z1 != 0``, ``|z2| + |z3| != 0`` and
    ``2|z1|^2 + |z2|^2 + |z3|^2 = 4/n``; then
    ``Q = 1 / (|z1| sqrt(|z2|^2 + |z3|^2))``.  One of z2, z3 may vanish, in
    which case both matrices are singular.
    """
    _check_n4l(n)
    if abs(abs(zeta) - 1) > tol:
        raise ValueError("zzet2: |zeta| != 1")
    if z1 == 0:
        raise ValueError("zzet2: z1 must be nonzero")
    if abs(z2) + abs(z3) == 0:
        raise ValueError("zzet2: |z2|+|z3| must be nonzero")
    if abs(2 * abs(z1) ** 2 + abs(z2) ** 2 + abs(z3) ** 2 - 4 / n) > tol:
        raise ValueError("zzet2: 2|z1|^2+|z2|^2+|z3|^2 != 4/n")
    s1, s2 = ssigma3(n)
    d1 = _diag4(n, (z1, z2, z1, z3))
    d2 = _diag4(n, (z1, -zeta * np.conj(z3), z1, zeta * np.conj(z2)))
    V1 = np.diag(d1) @ permutation_matrix(s1)
    V2 = np.diag(d2) @ permutation_matrix(s2)
    Q = 1 / (abs(z1) * math.sqrt(abs(z2) ** 2 + abs(z3) ** 2))
    params = {"z1": complex(z1), "z2": complex(z2), "z3": complex(z3), "zeta": complex(zeta)}
    return TLSolution(SpanningSet([V1, V2]), Q, "vvn4", params)


# label -> (sigma1, sigma2, u, v); u and v as exact fractions
S4_CASES: dict[str, tuple[str, str, tuple, tuple]] = {
    "a": ("id", "(1,2)(3,4)", (0, 0, 0, 0), (Fraction(1, 4), Fraction(-1, 4), Fraction(1, 4), Fraction(-1, 4))),
    "b": ("id", "(1,2,3,4)", (0, 0, 0, 0), (Fraction(1, 4), Fraction(-1, 4), Fraction(1, 4), Fraction(-1, 4))),
    "c": ("(2,3)", "(1,4)", (0, Fraction(1, 4), Fraction(-1, 4), 0), (Fraction(1, 4), 0, 0, Fraction(-1, 4))),
    "d": ("(2,3)", "(1,3,4,2)", (0, 0, 0, 0), (Fraction(1, 2), 0, 0, Fraction(1, 2))),
    "e": ("(2,3)", "(1,2)(3,4)", (0, 0, 0, 0), (Fraction(1, 2), 0, 0, Fraction(1, 2))),
    "f": ("(2,3,4)", "(3,2,1)", (0, 0, 0, 0), (1, 1, 0, 0)),
    "g": ("(1,2,3,4)", "(1,3)(2,4)", (0, 0, 0, 0), (1, 1, 0, 0)),
    "h": ("(1,2,3,4)", "(1,2)(3,4)", (0, 0, 0, 0), (1, 1, 0, 0)),
    "i": ("(1,2,3,4)", "(4,3,2,1)", (0, 0, 0, 0), (1, 0, 0, 0)),
    "j": ("(1,2)(3,4)", "(1,4)(2,3)", (0, 0, 0, 0), (1, 0, 0, 0)),
}

# pairs outside the hypotheses of the odd-vector construction; checked directly
_INSPECTION_CASES = ("f", "h")


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    pair: PermutationPair
    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    Q: float
    solution: TLSolution
    report: VerificationReport
    path: str


def _catalog_entry(label: str, tol: float) -> CatalogEntry:
    c1, c2, u, v = S4_CASES[label]
    s1, s2 = parse_cycles(c1, 4), parse_cycles(c2, 4)
    pair = PermutationPair(s1, s2)
    Q = 2 * math.sqrt(2)
    if label in _INSPECTION_CASES:
        d1 = 0.5 * np.exp(1j * np.pi * np.array([float(t) for t in u]))
        d2 = 0.5 * np.exp(1j * np.pi * np.array([float(t) for t in v]))
        system = Rank2System(s1, s2, d1, d2)
        sol = system.to_solution(Q, "s4-catalog", {"case": label})
        report = check_deq_system(system, Q, tol)
        if label == "h":
            # only fixed points of s1 o s2^-1 are 2 and 4 (1-based)
            tr = np.exp(1j * np.pi * float(u[1] - v[1])) + np.exp(1j * np.pi * float(u[3] - v[3]))
            report.record("trdd12b_closed_form", abs(tr), tol)
        path = "inspection"
    else:
        sol = build_ddss(DdssData(s1, s2, (0.0,) * 4, u, v), family="s4-catalog")
        sol = TLSolution(sol.spanning, sol.Q, "s4-catalog", {"case": label})
        report = VerificationReport()
        path = "odd-vector"
    report.merge(verify_by_criterion(sol, tol), prefix="criterion_")
    return CatalogEntry(label, pair, tuple(Fraction(t) for t in u), tuple(Fraction(t) for t in v), Q, sol, report, path)


def s4_catalog(tol: float = DEFAULT_TOL) -> list[CatalogEntry]:
    """The ten admissible classes in S_4 with an explicit unimodular solution each."""
    return [_catalog_entry(label, tol) for label in S4_CASES]


def _alternating_kernel_vector(s: Permutation) -> list[Fraction]:
    """+-1 alternating along every cycle, 0 on fixed points; ``P_s y = -y``."""
    y = [Fraction(0)] * s.n
    for cyc in s.cycles():
        for pos, k in enumerate(cyc):
            y[k - 1] = Fraction(1 if pos % 2 == 0 else -1)
    return y


def build_complementary(sigma1: Permutation, sigma2: Permutation) -> TLSolution:
    """Unimodular solution at ``Q = n / sqrt 2`` for pairs with complementary fixed points.

    Both permutations may only have fixed points and cycles of even length.
    """
    n = sigma1.n
    problems = []
    if n % 2 or sigma2.n != n:
        problems.append("n must be even and shared")
    for name, s in (("sigma1", sigma1), ("sigma2", sigma2)):
        if any(len(c) % 2 for c in s.cycles()):
            problems.append(f"{name} has a cycle of odd length > 1")
    f1, f2 = fixed_points(sigma1), fixed_points(sigma2)
    if f1 & f2 or (f1 | f2) != set(range(1, n + 1)):
        problems.append("fixed point sets are not complementary")
    if problems:
        raise ValueError("; ".join(problems))
    u = [t / 4 for t in _alternating_kernel_vector(sigma1)]
    v = [t / 4 for t in _alternating_kernel_vector(sigma2)]
    sol = build_ddss(DdssData(sigma1, sigma2, (0.0,) * n, u, v), family="complementary")
    return sol
