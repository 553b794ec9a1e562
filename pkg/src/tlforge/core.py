"""Temperley-Lieb generators from spanning sets, and their verification.

A representation of rank ``r`` is described by ``r`` coefficient matrices
``V_1..V_r`` (an orthonormal basis of the image of T, reshaped to n x n).
From them we build

* the projector ``P = sum_s vec(V_s) vec(V_s)^*`` on C^n (x) C^n,
* the generator ``T = Q P``,
* the ``rn x rn`` block matrix ``W`` whose (s, m) block is ``V_m conj(V_s)``.

T satisfies the four TL relations exactly when ``Q W`` is unitary, which is
the cheap check used for large n; the direct check of the relations works in
dimension n^3 and is capped accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    determinant,
    max_abs,
    normal_eigensystem,
    singular_values,
    unitarity_residual,
)

__all__ = [
    "AXIOM_N_CAP",
    "SpanningSet",
    "TLSolution",
    "VerificationReport",
    "build_w",
    "build_projector",
    "build_generator",
    "verify_tl_axioms",
    "verify_by_criterion",
    "apply_congruence",
    "congruence_fingerprint",
    "Fingerprint",
    "gram_residual",
]

AXIOM_N_CAP = 8


@dataclass(frozen=True)
class SpanningSet:
    mats: tuple[np.ndarray, ...]

    def __init__(self, mats: Sequence):
        ms = tuple(as_matrix(m) for m in mats)
        if not ms:
            raise ValueError("a spanning set needs at least one matrix")
        n = ms[0].shape[0]
        for m in ms:
            if m.shape != (n, n):
                raise ValueError(f"all matrices must be {n}x{n}, got {m.shape}")
        object.__setattr__(self, "mats", ms)

    @property
    def n(self) -> int:
        return self.mats[0].shape[0]

    @property
    def rank(self) -> int:
        return len(self.mats)

    def __iter__(self):
        return iter(self.mats)

    def __getitem__(self, k):
        return self.mats[k]

    def __len__(self):
        return len(self.mats)


@dataclass(frozen=True)
class TLSolution:
    """A constructed representation: ``T = Q * P`` for the subspace spanned by ``spanning``.

    ``duals`` is only set for the analytically continued (non-Hermitian)
    families, where ``conj(V_s)`` in the projector is replaced by ``duals[s]``.
    """

    spanning: SpanningSet
    Q: complex
    family: str
    params: Mapping[str, complex | str] = field(default_factory=dict)
    duals: SpanningSet | None = None

    def __post_init__(self):
        if self.duals is None:
            q = complex(self.Q)
            if abs(q.imag) > 0 or not q.real > 0:
                raise ValueError(f"Q must be a positive real, got {self.Q}")
            object.__setattr__(self, "Q", float(q.real))
        elif self.duals.n != self.spanning.n or self.duals.rank != self.spanning.rank:
            raise ValueError("duals must match the spanning set in size and rank")

    @property
    def n(self) -> int:
        return self.spanning.n

    @property
    def rank(self) -> int:
        return self.spanning.rank

    @property
    def mats(self) -> tuple[np.ndarray, ...]:
        return self.spanning.mats

    @property
    def hermitian(self) -> bool:
        return self.duals is None


@dataclass
class VerificationReport:
    residuals: dict[str, float] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def record(self, name: str, value: float, tol: float) -> None:
        """Record a residual that passes when ``value <= tol``."""
        self.residuals[name] = float(value)
        self.tolerances[name] = float(tol)

    def fail(self, message: str) -> None:
        self.failures.append(message)

    @property
    def passed(self) -> bool:
        ok = all(self.residuals[k] <= self.tolerances[k] for k in self.residuals)
        return ok and not self.failures

    def failed_checks(self) -> list[str]:
        out = [k for k in self.residuals if self.residuals[k] > self.tolerances[k]]
        return out + list(self.failures)

    def merge(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        for k, v in other.residuals.items():
            self.record(prefix + k, v, other.tolerances[k])
        self.notes.extend(other.notes)
        self.failures.extend(other.failures)
        return self

    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def table(self) -> str:
        lines = []
        for k, v in self.residuals.items():
            mark = "ok" if v <= self.tolerances[k] else "FAIL"
            lines.append(f"{k:<24s} {v:12.3e}  (tol {self.tolerances[k]:.1e})  {mark}")
        lines.extend(f"failure: {f}" for f in self.failures)
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "residuals": dict(self.residuals),
            "tolerances": dict(self.tolerances),
            "failures": list(self.failures),
            "notes": list(self.notes),
            "passed": self.passed,
        }


def _mats(s) -> tuple[np.ndarray, ...]:
    if isinstance(s, TLSolution):
        return s.mats
    if isinstance(s, SpanningSet):
        return s.mats
    return SpanningSet(s).mats


def build_w(s) -> np.ndarray:
    """Block matrix with block (s, m) equal to ``V_m conj(V_s)``."""
    mats = _mats(s)
    return np.block([[vm @ vs.conj() for vm in mats] for vs in mats])


def gram_residual(s) -> float:
    """max |tr(V_s^* V_m) - delta_sm|."""
    mats = _mats(s)
    vecs = np.array([m.reshape(-1) for m in mats])
    gram = vecs.conj() @ vecs.T
    return max_abs(gram - np.eye(len(mats)))


def build_projector(s, tol: float = DEFAULT_TOL, duals=None) -> np.ndarray:
    """``sum_s vec(V_s) vec(V_s)^*`` with row-major ``vec``.

    This is the sum over a, b, c, d of ``(V_s)_ab conj(V_s)_cd E_ac (x) E_bd``.
    With ``duals`` the conjugate factor is replaced by ``vec(duals[s])^t``.
    """
    if isinstance(s, TLSolution):
        duals = s.duals if duals is None else duals
    mats = _mats(s)
    vecs = np.array([m.reshape(-1) for m in mats])
    if duals is None:
        if gram_residual(mats) > tol:
            raise ValueError("spanning set is not orthonormal within tolerance")
        return vecs.T @ vecs.conj()
    dvecs = np.array([m.reshape(-1) for m in _mats(duals)])
    return vecs.T @ dvecs


def build_generator(sol: TLSolution, tol: float = DEFAULT_TOL) -> np.ndarray:
    return sol.Q * build_projector(sol, tol=tol)


def verify_tl_axioms(
    T, Q, n: int, tol: float = DEFAULT_TOL, hermitian: bool = True, cap: int = AXIOM_N_CAP
) -> VerificationReport:
    """Residuals of T* = T, T^2 = QT, T12 T23 T12 = T12 and T23 T12 T23 = T23.

    ``T12 = T (x) I_n`` and ``T23 = I_n (x) T`` are formed densely, so n is
    capped at ``cap``.
    """
    T = as_matrix(T)
    if T.shape != (n * n, n * n):
        raise ValueError(f"T must be {n * n}x{n * n} for n={n}, got {T.shape}")
    if n > cap:
        raise ValueError(f"direct axiom check needs n <= {cap} (got n={n}); use verify_by_criterion")
    rep = VerificationReport()
    scale = max(1.0, abs(Q))
    if hermitian:
        rep.record("t1", max_abs(T.conj().T - T), tol * scale)
    else:
        rep.residuals["t1"] = max_abs(T.conj().T - T)
        rep.tolerances["t1"] = float("inf")
        rep.notes.append("t1 not required (non-hermitian mode)")
    rep.record("t2", max_abs(T @ T - Q * T), tol * scale * scale)
    eye = np.eye(n)
    t12 = np.kron(T, eye)
    t23 = np.kron(eye, T)
    rep.record("t3", max_abs(t12 @ t23 @ t12 - t12), tol * scale * scale)
    rep.record("t4", max_abs(t23 @ t12 @ t23 - t23), tol * scale * scale)
    return rep


def verify_by_criterion(sol: TLSolution, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Orthonormality of the spanning set and unitarity of ``Q W``.

    For rank one also checks ``det(Q W) = 1``.
    """
    if not sol.hermitian:
        raise ValueError("the unitarity criterion applies to hermitian solutions only")
    rep = VerificationReport()
    rep.record("orthonormality", gram_residual(sol), tol)
    qw = sol.Q * build_w(sol)
    rep.record("unitarity", unitarity_residual(qw), tol)
    if sol.rank == 1:
        rep.record("det_qw", abs(determinant(qw) - 1.0), tol * max(1, sol.n))
    return rep


def apply_congruence(sol: TLSolution, g, tol: float = DEFAULT_TOL) -> TLSolution:
    """``V_k -> g V_k g^t``; on generators this is ``T -> (g x g) T (g* x g*)``."""
    g = as_matrix(g)
    if unitarity_residual(g) > tol:
        raise ValueError("congruence matrix is not unitary within tolerance")
    mats = SpanningSet([g @ v @ g.T for v in sol.mats])
    duals = None
    if sol.duals is not None:
        duals = SpanningSet([g.conj() @ v @ g.conj().T for v in sol.duals.mats])
    return replace(sol, spanning=mats, duals=duals)


@dataclass(frozen=True)
class Fingerprint:
    singulars: np.ndarray
    spectrum_vvbar: np.ndarray | None
    chi: complex

    def matches(self, other: "Fingerprint", tol: float = 1e-8) -> tuple[bool, str]:
        if self.singulars.shape != other.singulars.shape:
            return False, "dimension"
        if max_abs(self.singulars - other.singulars) > tol:
            return False, "singular values"
        if abs(self.chi - other.chi) > tol:
            return False, "chi"
        if self.spectrum_vvbar is not None and other.spectrum_vvbar is not None:
            if not _multiset_close(self.spectrum_vvbar, other.spectrum_vvbar, tol):
                return False, "spectrum of V conj(V)"
        return True, "not distinguished"


def _multiset_close(a, b, tol: float) -> bool:
    """Greedy matching of two complex multisets."""
    rest = list(np.asarray(b))
    for x in np.asarray(a):
        if not rest:
            return False
        d = [abs(x - y) for y in rest]
        k = int(np.argmin(d))
        if d[k] > tol:
            return False
        rest.pop(k)
    return not rest


def congruence_fingerprint(V, tol: float = DEFAULT_TOL) -> Fingerprint:
    """Invariants of ``V`` under ``V -> g V g^t`` for unitary ``g``.

    Singular values of V, the spectrum of ``V conj(V)`` (only when that matrix
    is normal, otherwise ``None``) and ``chi = tr(V conj(V))``.
    """
    V = as_matrix(V)
    vv = V @ V.conj()
    eig = normal_eigensystem(vv, tol=tol)
    spec = None
    if eig is not None:
        vals = eig[0]
        spec = vals[np.lexsort((vals.imag, vals.real))]
    return Fingerprint(singular_values(V, tol=tol), spec, complex(np.trace(vv)))
