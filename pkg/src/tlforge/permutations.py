"""Permutations of {1..n}, cycle notation, and admissible pairs.

A :class:`Permutation` stores its 0-based image array; all text input and
output uses 1-based cycle notation such as ``"(1,4)(2,3)"``.

The admissibility predicate and the brute-force enumeration of admissible
pairs up to simultaneous conjugation (optionally combined with swapping the
two members) live here as well.
"""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial

import numpy as np

__all__ = [
    "Permutation",
    "PermutationPair",
    "PairClass",
    "from_cycles",
    "parse_cycles",
    "compose",
    "inverse",
    "conjugate",
    "permutation_matrix",
    "fixed_points",
    "commute",
    "is_admissible_pair",
    "canonicalize",
    "enumerate_admissible_classes",
    "DEFAULT_ENUM_CAP",
]

DEFAULT_ENUM_CAP = 6


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(k) for k in self.image)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"{img} is not a permutation of 0..{len(img) - 1}")
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_images(cls, images) -> "Permutation":
        """Build from the 1-based images ``(s(1), ..., s(n))``."""
        return cls(tuple(int(k) - 1 for k in images))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, k: int) -> int:
        """Image of the 1-based point ``k``."""
        return self.image[k - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def images(self) -> tuple[int, ...]:
        """1-based image tuple."""
        return tuple(k + 1 for k in self.image)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles in 1-based notation, each starting at its least point."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            k = start
            while not seen[k]:
                seen[k] = True
                cyc.append(k + 1)
                k = self.image[k]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def is_identity(self) -> bool:
        return all(k == i for i, k in enumerate(self.image))

    def is_involution(self) -> bool:
        return all(self.image[self.image[k]] == k for k in range(self.n))

    def order(self) -> int:
        out = 1
        for c in self.cycle_type():
            out = out * c // np.gcd(out, c)
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + ",".join(str(k) for k in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self}, n={self.n})"


def from_cycles(n: int, cycles) -> Permutation:
    """Permutation of {1..n} from 1-based cycles; unmentioned points are fixed."""
    image = list(range(n))
    seen: set[int] = set()
    for cyc in cycles:
        cyc = [int(k) for k in cyc]
        for k in cyc:
            if not 1 <= k <= n:
                raise ValueError(f"symbol {k} out of range 1..{n}")
            if k in seen:
                raise ValueError(f"symbol {k} repeated in cycles")
            seen.add(k)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            image[a - 1] = b - 1
    return Permutation(tuple(image))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse ``"(1,4)(2,3)"`` (whitespace ignored) or ``"id"``."""
    s = re.sub(r"\s+", "", text)
    if s in ("", "id", "()"):
        return Permutation.identity(n)
    cycles = _CYCLE_RE.findall(s)
    if "".join(f"({c})" for c in cycles) != s:
        raise ValueError(f"malformed cycle notation: {text!r}")
    parsed = []
    for c in cycles:
        parts = c.split(",") if "," in c else list(c)
        parsed.append([int(p) for p in parts if p])
    return from_cycles(n, parsed)


def _check_same(a: Permutation, b: Permutation) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``(a o b)(k) = a(b(k))``."""
    _check_same(a, b)
    return Permutation(tuple(a.image[k] for k in b.image))


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.n
    for k, v in enumerate(a.image):
        inv[v] = k
    return Permutation(tuple(inv))


def conjugate(a: Permutation, tau: Permutation) -> Permutation:
    """``tau o a o tau^{-1}``."""
    _check_same(a, tau)
    inv = inverse(tau).image
    return Permutation(tuple(tau.image[a.image[inv[k]]] for k in range(a.n)))


def permutation_matrix(a: Permutation) -> np.ndarray:
    """``(P_s)_{ij} = delta_{i, s(j)}``, so ``P_s e_j = e_{s(j)}``."""
    p = np.zeros((a.n, a.n))
    p[list(a.image), list(range(a.n))] = 1.0
    return p


def fixed_points(a: Permutation) -> frozenset[int]:
    """1-based fixed points."""
    return frozenset(k + 1 for k in range(a.n) if a.image[k] == k)


def commute(a: Permutation, b: Permutation) -> bool:
    return compose(a, b) == compose(b, a)


@dataclass(frozen=True)
class PermutationPair:
    first: Permutation
    second: Permutation

    def __post_init__(self):
        _check_same(self.first, self.second)

    @property
    def n(self) -> int:
        return self.first.n

    def key(self) -> tuple[int, ...]:
        return self.first.image + self.second.image

    def swapped(self) -> "PermutationPair":
        return PermutationPair(self.second, self.first)

    def conjugated(self, tau: Permutation) -> "PermutationPair":
        return PermutationPair(conjugate(self.first, tau), conjugate(self.second, tau))

    def sigma_prime(self) -> Permutation:
        s1, s2i = self.first, inverse(self.second)
        return compose(compose(s1, s1), compose(s2i, inverse(s1)))

    def sigma_double_prime(self) -> Permutation:
        s1, s2, s2i = self.first, self.second, inverse(self.second)
        return compose(compose(s2, s1), compose(s2i, s2i))

    def __str__(self) -> str:
        return f"{self.first} , {self.second}"


@dataclass(frozen=True)
class PairClass:
    canonical: PermutationPair
    members_count: int


def is_admissible_pair(p: PermutationPair) -> tuple[bool, str]:
    """Admissibility test; returns ``(ok, reason)``.

    The reason names the first violated clause: ``"ssss"`` for the commutation
    relation between s1 o s2^{-1} and s2^{-1} o s1, ``"common-fixed-point"``, or
    ``"fixed-point-of-quotient"`` when both members are involutions (or
    commute) and s2^{-1} o s1 fixes a point.
    """
    if p.n % 2:
        raise ValueError(f"admissibility is defined for even n only (got n={p.n})")
    s1, s2 = p.first, p.second
    s2i = inverse(s2)
    lhs = compose(compose(s2i, s1), compose(s1, s2i))
    rhs = compose(compose(s1, s2i), compose(s2i, s1))
    if lhs != rhs:
        return False, "ssss"
    common = fixed_points(s1) & fixed_points(s2)
    if common:
        return False, f"common-fixed-point {min(common)}"
    if (s1.is_involution() and s2.is_involution()) or commute(s1, s2):
        fp = fixed_points(compose(s2i, s1))
        if fp:
            return False, f"fixed-point-of-quotient {min(fp)}"
    return True, "admissible"


def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _invert_rows(perms: np.ndarray) -> np.ndarray:
    inv = np.empty_like(perms)
    rows = np.arange(perms.shape[0])[:, None]
    inv[rows, perms] = np.arange(perms.shape[1])[None, :]
    return inv


def _orbit_keys(s1: np.ndarray, s2: np.ndarray, taus: np.ndarray, taus_inv: np.ndarray) -> np.ndarray:
    """All (tau-conjugate, optionally swapped) encodings of one pair, as rows."""
    c1 = np.take_along_axis(taus, s1[taus_inv], axis=1)
    c2 = np.take_along_axis(taus, s2[taus_inv], axis=1)
    return np.vstack([np.hstack([c1, c2]), np.hstack([c2, c1])])


def _lexmin(rows: np.ndarray) -> tuple[int, ...]:
    order = np.lexsort(rows.T[::-1])
    return tuple(int(v) for v in rows[order[0]])


def canonicalize(p: PermutationPair) -> PairClass:
    """Lexicographically least encoding over the conjugation/swap orbit."""
    n = p.n
    taus = _all_perms(n)
    rows = _orbit_keys(np.array(p.first.image), np.array(p.second.image), taus, _invert_rows(taus))
    rows = np.unique(rows, axis=0)
    best = _lexmin(rows)
    return PairClass(PermutationPair(Permutation(best[:n]), Permutation(best[n:])), len(rows))


def _admissible_mask(s1: np.ndarray, perms: np.ndarray, inv: np.ndarray) -> np.ndarray:
    """Vectorised admissibility of (s1, s2) for every s2 in ``perms``."""
    n = perms.shape[1]
    idx = np.arange(n)
    m = perms.shape[0]
    s1b = np.broadcast_to(s1, (m, n))

    def comp(a, b):
        return np.take_along_axis(a, b, axis=1)

    s1s1 = s1[s1]
    # s2^{-1} o s1 o s1 o s2^{-1}  vs  s1 o s2^{-1} o s2^{-1} o s1
    lhs = comp(inv, s1s1[inv])
    rhs = s1[comp(inv, comp(inv, s1b))]
    ok = np.all(lhs == rhs, axis=1)
    fixed1 = s1 == idx
    ok &= ~np.any((perms == idx) & fixed1, axis=1)
    s1_inv = s1[s1] == idx
    s1_invol = bool(np.all(s1_inv))
    s2_invol = np.all(perms[np.arange(m)[:, None], perms] == idx, axis=1)
    commuting = np.all(comp(perms, s1b) == s1[perms], axis=1)
    quotient_fixed = np.any(comp(inv, s1b) == idx, axis=1)
    ok &= ~(((s2_invol & s1_invol) | commuting) & quotient_fixed)
    return ok


def _scan_chunk(args) -> list[tuple[int, int]]:
    n, lo, hi = args
    perms = _all_perms(n)
    inv = _invert_rows(perms)
    out = []
    for i in range(lo, hi):
        mask = _admissible_mask(perms[i], perms, inv)
        out.extend((i, int(j)) for j in np.flatnonzero(mask))
    return out


def enumerate_admissible_classes(
    n: int, cap: int = DEFAULT_ENUM_CAP, workers: int = 1, partitions: int | None = None
) -> list[PairClass]:
    """All admissible pairs in S_n x S_n grouped into equivalence classes.

    The scan over the first member is split into ``partitions`` contiguous
    rank ranges, optionally run in ``workers`` processes.  The result is sorted
    by canonical encoding and does not depend on the partitioning.
    """
    if n % 2:
        raise ValueError(f"n must be even (got n={n})")
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    nf = factorial(n)
    parts = partitions or max(1, workers)
    bounds = [round(k * nf / parts) for k in range(parts + 1)]
    chunks = [(n, bounds[k], bounds[k + 1]) for k in range(parts)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_chunk, chunks))
    else:
        results = [_scan_chunk(c) for c in chunks]
    admissible = {pair for chunk in results for pair in chunk}

    perms = _all_perms(n)
    inv = _invert_rows(perms)
    rank = {tuple(int(v) for v in row): i for i, row in enumerate(perms)}
    classes = []
    remaining = set(admissible)
    while remaining:
        i, j = min(remaining)
        rows = np.unique(_orbit_keys(perms[i], perms[j], perms, inv), axis=0)
        members = {(rank[tuple(int(v) for v in r[:n])], rank[tuple(int(v) for v in r[n:])]) for r in rows}
        if not members <= admissible:
            raise AssertionError("admissibility is not conjugation invariant")
        remaining -= members
        best = _lexmin(rows)
        classes.append(PairClass(PermutationPair(Permutation(best[:n]), Permutation(best[n:])), len(rows)))
    classes.sort(key=lambda c: c.canonical.key())
    return classes
