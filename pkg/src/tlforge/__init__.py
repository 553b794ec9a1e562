"""tlforge: Temperley-Lieb generators on C^n (x) C^n built from spanning sets of matrices.

Submodules
----------
linalg        dense complex helpers and a Jacobi Hermitian eigensolver
permutations  S_n elements, cycle notation and admissible pairs
core          projector, generator, W matrix and the verification routines
rank1         the rank-one normal form
rank2         rank-two families
io, cli       JSON interchange and the ``tlforge`` command
"""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    SpanningSet,
    TLSolution,
    VerificationReport,
    apply_congruence,
    build_generator,
    build_projector,
    build_w,
    congruence_fingerprint,
    verify_by_criterion,
    verify_tl_axioms,
)
from .permutations import Permutation, PermutationPair, from_cycles, parse_cycles  # noqa: E402

__all__ = [
    "__version__",
    "SpanningSet",
    "TLSolution",
    "VerificationReport",
    "apply_congruence",
    "build_generator",
    "build_projector",
    "build_w",
    "congruence_fingerprint",
    "verify_by_criterion",
    "verify_tl_axioms",
    "Permutation",
    "PermutationPair",
    "from_cycles",
    "parse_cycles",
]
