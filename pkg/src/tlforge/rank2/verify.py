"""Checks specific to rank-two spanning sets."""

from __future__ import annotations

import math

import numpy as np

from ..core import SpanningSet, VerificationReport
from ..linalg import DEFAULT_TOL, determinant, max_abs, singular_values, unitarity_residual

__all__ = ["verify_rank2", "almost_unitary_scale", "ALMOST_UNITARY_SPREAD"]

ALMOST_UNITARY_SPREAD = 1e-8


def almost_unitary_scale(a, rel: float = ALMOST_UNITARY_SPREAD) -> float | None:
    """``alpha`` with ``alpha a`` unitary, or None when the singular values spread."""
    sv = singular_values(a)
    if sv[-1] <= 0 or (sv[0] - sv[-1]) > rel * sv[0]:
        return None
    return 1.0 / float(np.mean(sv))


def verify_rank2(s, Q: float, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Matrix equations of ``Q W`` unitarity for a pair, plus the structural consequences.

    Residuals: the three quadratic matrix equations, the trace normalisation,
    ``|det V1| = |det V2|``, singularity for odd n, and the lower bound on Q
    (``Q = sqrt 2`` at n = 2, ``Q >= n/2`` otherwise).  When ``V_i conj(V_i)``
    is a multiple of a unitary matrix for some i, the sharpened chain is
    checked too: every block of W is unitary at the same scale ``alpha``,
    ``alpha = sqrt 2 Q``, ``Q >= n / sqrt 2`` and ``V_1^-1 V_2`` is unitary.
    """
    mats = s.mats if hasattr(s, "mats") else SpanningSet(s).mats
    if len(mats) != 2:
        raise ValueError(f"verify_rank2 needs exactly two matrices, got {len(mats)}")
    v1, v2 = mats
    n = v1.shape[0]
    eye = np.eye(n)
    rep = VerificationReport()
    h = lambda m: m.conj().T  # noqa: E731
    c = np.conj
    rep.record("veq1", max_abs(v1 @ c(v1) @ v1.T @ h(v1) + v2 @ c(v1) @ v1.T @ h(v2) - eye / Q**2), tol)
    rep.record("veq2", max_abs(v1 @ c(v2) @ v2.T @ h(v1) + v2 @ c(v2) @ v2.T @ h(v2) - eye / Q**2), tol)
    rep.record("veq3", max_abs(v1 @ c(v1) @ v2.T @ h(v1) + v2 @ c(v1) @ v2.T @ h(v2)), tol)
    gram = [[np.trace(h(a) @ b) for b in mats] for a in mats]
    rep.record("norm2", max(abs(gram[0][0] - 1), abs(gram[1][1] - 1), abs(gram[0][1])), tol)
    d1, d2 = abs(determinant(v1)), abs(determinant(v2))
    rep.record("det_equal", abs(d1 - d2), tol)
    if n % 2:
        rep.record("det_zero_odd", max(d1, d2), tol)
    if n == 2:
        rep.record("q_bound", abs(Q - math.sqrt(2)), tol)
    else:
        rep.record("q_bound", max(0.0, n / 2 - Q), tol * n)
    for i, v in enumerate(mats, start=1):
        alpha = almost_unitary_scale(v @ c(v))
        if alpha is None:
            continue
        rep.notes.append(f"V{i} conj(V{i}) is almost unitary (alpha = {alpha:.12g})")
        blocks = [a @ c(b) for a in mats for b in mats]
        rep.record("vvg2_blocks", max(unitarity_residual(alpha * b) for b in blocks), 10 * tol)
        rep.record("vvg2_alpha", abs(alpha - math.sqrt(2) * Q), 10 * tol * max(1.0, Q))
        rep.record("vvg2_q_bound", max(0.0, n / math.sqrt(2) - Q), tol * n)
        g = np.linalg.solve(v1, v2)
        rep.record("vvg2_g_unitary", unitarity_residual(g), 10 * tol * max(1.0, Q))
        break
    return rep
