"""Rank-two constructions: n = 3p block families, generalized permutation pairs and their verifier."""

from . import genperm, n3p, verify
from .genperm import *  # noqa: F401,F403
from .n3p import *  # noqa: F401,F403
from .verify import *  # noqa: F401,F403

__all__ = list(genperm.__all__) + list(n3p.__all__) + list(verify.__all__)
