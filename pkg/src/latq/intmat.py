"""Exact integer and rational matrix primitives.

Matrices are lists of rows.  Wherever a matrix stands for a lattice, its
*columns* are the generating vectors.
"""

from fractions import Fraction
from math import lcm

from .errors import RankDeficient


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def identity(n, scale=1):
    return [[scale if i == j else 0 for j in range(n)] for i in range(n)]


def det(rows):
    """Exact determinant by Gaussian elimination over the rationals."""
    n = len(rows)
    M = [[Fraction(x) for x in row] for row in rows]
    result = Fraction(1)
    for i in range(n):
        pivot = next((r for r in range(i, n) if M[r][i] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != i:
            M[i], M[pivot] = M[pivot], M[i]
            result = -result
        p = M[i][i]
        result *= p
        for r in range(i + 1, n):
            f = M[r][i] / p
            if f:
                Mr, Mi = M[r], M[i]
                for c in range(i, n):
                    Mr[c] -= f * Mi[c]
    return result


def inverse(rows):
    """Exact inverse over the rationals (Gauss-Jordan)."""
    n = len(rows)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for i in range(n):
        pivot = next((r for r in range(i, n) if M[r][i] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        M[i], M[pivot] = M[pivot], M[i]
        p = M[i][i]
        M[i] = [x / p for x in M[i]]
        for r in range(n):
            if r != i and M[r][i] != 0:
                f = M[r][i]
                Mi = M[i]
                M[r] = [x - f * y for x, y in zip(M[r], Mi)]
    return [row[n:] for row in M]


def common_denominator(rows):
    return lcm(*(Fraction(x).denominator for row in rows for x in row))


def is_integral(rows):
    return all(Fraction(x).denominator == 1 for row in rows for x in row)


def _combine(ci, cj, a, b):
    # Unimodular 2-column step leaving gcd(a, b) in ci and 0 in cj at the pivot row.
    g, s, t = xgcd(a, b)
    ag, bg = a // g, b // g
    new_i = [s * x + t * y for x, y in zip(ci, cj)]
    new_j = [ag * y - bg * x for x, y in zip(ci, cj)]
    return new_i, new_j


def hnf_columns(columns, n):
    """Lower-triangular column Hermite normal form.

    ``columns`` are integer vectors of length ``n`` spanning a full-rank
    lattice.  Returns ``n`` columns ``H`` with ``H[i][i] > 0`` on the
    diagonal, zeros above it, and every entry left of the diagonal in row
    ``i`` reduced into ``[0, H[i][i])``.  The output depends only on the
    lattice spanned, not on the generating set.
    """
    cols = [[int(x) for x in c] for c in columns if any(c)]
    for c in cols:
        if len(c) != n:
            raise ValueError(f"column of length {len(c)} in dimension {n}")
    if len(cols) < n:
        raise RankDeficient(f"{len(cols)} nonzero columns cannot span dimension {n}")
    for i in range(n):
        for j in range(i + 1, len(cols)):
            if cols[j][i] != 0:
                cols[i], cols[j] = _combine(cols[i], cols[j], cols[i][i], cols[j][i])
        d = cols[i][i]
        if d == 0:
            raise RankDeficient(f"columns do not span dimension {n} (row {i})")
        if d < 0:
            cols[i] = [-x for x in cols[i]]
            d = -d
        ci = cols[i]
        for j in range(i):
            f = cols[j][i] // d
            if f:
                cols[j] = [x - f * y for x, y in zip(cols[j], ci)]
        # drop columns that became zero to keep later sweeps short
        cols = cols[: i + 1] + [c for c in cols[i + 1:] if any(c)]
        if len(cols) < n:
            raise RankDeficient(f"columns do not span dimension {n}")
    return [tuple(c) for c in cols[:n]]


def integer_kernel(rows, ncols):
    """Basis (as vectors) of {x in Z^ncols : rows @ x = 0}.

    Column-reduces the matrix while tracking the unimodular transform; the
    transform columns sitting under zero columns span the kernel.
    """
    m = len(rows)
    # each working column: (image under rows, transform column)
    work = []
    for j in range(ncols):
        img = [row[j] for row in rows]
        tr = [int(k == j) for k in range(ncols)]
        work.append(img + tr)
    pivot_col = 0
    for r in range(m):
        for j in range(pivot_col + 1, ncols):
            if work[j][r] != 0:
                work[pivot_col], work[j] = _combine(work[pivot_col], work[j], work[pivot_col][r], work[j][r])
        if pivot_col < ncols and work[pivot_col][r] != 0:
            pivot_col += 1
    return [tuple(w[m:]) for w in work[pivot_col:] if not any(w[:m])]
