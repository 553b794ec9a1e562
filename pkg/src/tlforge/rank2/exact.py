"""Exact rational and integer linear algebra on lists of Python numbers.

Used to decide, without rounding, whether ``A u + B v`` can be made a vector
of odd integers for rational ``u, v``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

__all__ = [
    "rref",
    "solve_rational",
    "rational_nullspace",
    "integer_kernel",
    "solve_mod2",
    "odd_vector_in_column_space",
]


def _frac_matrix(m) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = _frac_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def solve_rational(m, b) -> list[Fraction] | None:
    """A particular solution of ``m x = b`` (free variables set to 0), or None."""
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    red, pivots = rref(aug)
    ncols = len(m[0])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x


def rational_nullspace(m) -> list[list[Fraction]]:
    """Basis of the right null space of ``m`` over Q."""
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(red, pivots):
            x[c] = -row[f]
        basis.append(x)
    return basis


def _to_integer_row(v) -> list[int]:
    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    return [int(Fraction(x) * den) for x in v]


def integer_kernel(c, ncols: int) -> list[list[int]]:
    """Z-basis of ``{x in Z^ncols : c x = 0}`` for an integer matrix ``c``.

    Column operations reduce ``c`` to echelon form while the same operations
    are applied to an identity matrix ``u``; the columns of ``u`` that end up
    multiplying zero columns form the basis.
    """
    x = [list(map(int, row)) for row in c]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop_sub(dst, src, f):
        for row in x:
            row[dst] -= f * row[src]
        for row in u:
            row[dst] -= f * row[src]

    def colswap(i, j):
        for row in x:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    pc = 0
    for r in range(len(x)):
        while True:
            active = [j for j in range(pc, ncols) if x[r][j] != 0]
            if len(active) <= 1:
                break
            k = min(active, key=lambda j: abs(x[r][j]))
            for j in active:
                if j != k:
                    colop_sub(j, k, x[r][j] // x[r][k])
        if active:
            colswap(pc, active[0])
            pc += 1
        if pc == ncols:
            break
    return [[u[i][j] for i in range(ncols)] for j in range(pc, ncols)]


def solve_mod2(vectors, target) -> list[int] | None:
    """Coefficients ``c in {0,1}`` with ``sum c_j vectors[j] = target (mod 2)``."""
    n = len(target)
    k = len(vectors)
    rows = [[vectors[j][i] & 1 for j in range(k)] + [target[i] & 1] for i in range(n)]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(n):
            if i != r and rows[i][col]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] and not any(row[:-1]) for row in rows):
        return None
    coeff = [0] * k
    for row, col in zip(rows, pivots):
        coeff[col] = row[-1]
    return coeff


def odd_vector_in_column_space(m) -> tuple[list[int], list[Fraction]] | None:
    """Find an all-odd integer vector ``w`` and rational ``y`` with ``m y = w``.

    Returns ``None`` exactly when no such pair exists.  The lattice of integer
    points of the column space of ``m`` is the integer kernel of an integer
    basis of its orthogonal complement; an all-odd point exists iff the
    all-ones vector lies in that lattice modulo 2.
    """
    n = len(m)
    mt = [list(col) for col in zip(*m)]
    perp = [_to_integer_row(v) for v in rational_nullspace(mt)] if mt else []
    lattice = integer_kernel(perp, n) if perp else [[int(i == j) for i in range(n)] for j in range(n)]
    coeff = solve_mod2(lattice, [1] * n)
    if coeff is None:
        return None
    w = [sum(c * vec[i] for c, vec in zip(coeff, lattice)) for i in range(n)]
    y = solve_rational(m, w)
    if y is None:
        raise AssertionError("lattice point is not in the column space")
    return w, y
