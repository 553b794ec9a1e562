"""Build a rank-one solution, hide it behind a random unitary congruence and recover it.

Run with ``python3 demos/rank1_round_trip.py``.
"""

import numpy as np

from tlforge.core import apply_congruence, build_generator, verify_tl_axioms
from tlforge.permutations import parse_cycles
from tlforge.rank1 import Rank1Params, build_rank1, reduce_to_normal_form, spectral_pairing_check

rng = np.random.default_rng(1)
sigma = parse_cycles("(1,4)(2,5)", 5)
sol = build_rank1(Rank1Params(sigma, (0.55 * np.exp(0.4j), 0.3 * np.exp(-1.1j)), sign_choice=1))
print(f"n = {sol.n}, sigma = {sigma}, Q = {sol.Q:.6f}")

rep = verify_tl_axioms(build_generator(sol), sol.Q, sol.n)
print(f"axioms hold: {rep.passed} (max residual {rep.max_residual():.1e})")
print(f"singular values pair to 1/Q: {spectral_pairing_check(sol.mats[0], sol.Q).passed}")

g = np.linalg.qr(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))[0]
hidden = apply_congruence(sol, g)
nf = reduce_to_normal_form(hidden.mats[0], hidden.Q)
print(f"recovered sigma = {nf.sigma}")
print("|D|^2 before:", np.round(np.sort(np.abs(np.diag(sol.mats[0] @ sol.mats[0].conj().T))), 6))
print("|D|^2 after: ", np.round(np.sort(np.abs(nf.D) ** 2), 6))
print(f"||g V g^t - D P|| = {np.linalg.norm(nf.g @ hidden.mats[0] @ nf.g.T - nf.matrix):.1e}")
