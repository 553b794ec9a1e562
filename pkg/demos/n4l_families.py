"""The three n = 4l families: Q range, the chi invariant, and a non-hermitian continuation."""

import math

import numpy as np

from tlforge.core import build_projector, congruence_fingerprint, verify_by_criterion, verify_tl_axioms
from tlforge.rank2 import build_vvn4, build_vvn4k, vvn4k_zpar

n = 8
r = math.sqrt(2 / n)
print(f"n = {n}: lower bound n/sqrt2 = {n / math.sqrt(2):.4f}")
for theta in (math.pi / 4, 0.5, 0.2, 0.05):
    sol = build_vvn4k(n, "ssigma1", r * math.cos(theta), r * math.sin(theta), 1.0)
    print(f"  theta = {theta:.3f}  Q = {sol.Q:10.4f}  criterion passes: {verify_by_criterion(sol).passed}")

z = (0.4 * np.exp(0.2j), 0.3 * np.exp(-0.9j))  # |z1|^2 + |z2|^2 = 2/n
candidates = {
    "cyclic pair": build_vvn4k(n, "ssigma1", *z, np.exp(0.7j)),
    "antidiagonal pair": build_vvn4k(n, "ssigma2", *z, np.exp(0.7j)),
    "cycle and transpositions": build_vvn4(n, 0.35, 0.3, math.sqrt(4 / n - 2 * 0.35**2 - 0.09) * 1j, np.exp(0.7j)),
}
print("chi(V) = tr(V conj V):")
for name, sol in candidates.items():
    chi = [congruence_fingerprint(V).chi for V in sol.mats]
    print(f"  {name:<26} chi(V1) = {abs(chi[0]):.3e}  chi(V2) = {abs(chi[1]):.3e}")

print("complex q, n = 4:")
for q in (1 + 1j, 2 * np.exp(1j * np.pi / 5)):
    sol = vvn4k_zpar(4, "ssigma1", q)
    rep = verify_tl_axioms(sol.Q * build_projector(sol), sol.Q, 4, tol=1e-8, hermitian=False)
    print(f"  q = {q:.3f}  Q = {sol.Q:.4f}  T2-T4 hold: {rep.passed}  T* - T = {rep.residuals['t1']:.2f}")
