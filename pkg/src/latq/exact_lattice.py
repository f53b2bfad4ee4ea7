"""Full-rank lattices with exact rational bases.

Columns of ``matrix`` are the basis vectors.  Two bases generate the same
lattice iff their canonical forms agree; the canonical form is the
lower-triangular column HNF (positive diagonal, entries left of the
diagonal in row i reduced into [0, H[i][i])) computed after clearing
denominators, then scaled back.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import floor, inf

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from . import intmat
from .errors import BudgetExceeded, RankDeficient, default_budget
from .zq_codes import ZqCode, _norms


def _frac_matrix(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class LatticeBasis:
    """Basis of a full-rank lattice in Q^n (columns are basis vectors).

    ``modulus`` optionally records an N with N Z^n contained in the lattice
    (q^a for the q^a-ary lattices built from codes).
    """

    def __init__(self, matrix, modulus=None):
        self.matrix = _frac_matrix(matrix)
        self.n = len(self.matrix)
        if any(len(row) != self.n for row in self.matrix):
            raise ValueError("basis matrix must be square")
        if intmat.det(self.matrix) == 0:
            raise RankDeficient("basis is singular")
        self.modulus = modulus

    @classmethod
    def from_columns(cls, columns, modulus=None):
        return cls(intmat.transpose([list(c) for c in columns]), modulus)

    @property
    def columns(self):
        return [tuple(col) for col in zip(*self.matrix)]

    @cached_property
    def canonical(self):
        s = intmat.common_denominator(self.matrix)
        cols = [[int(x * s) for x in c] for c in self.columns]
        H = intmat.hnf_columns(cols, self.n)
        return tuple(tuple(Fraction(x, s) for x in c) for c in H)

    def __eq__(self, other):
        if not isinstance(other, LatticeBasis):
            return NotImplemented
        return self.n == other.n and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        cols = [[_num(x) for x in c] for c in self.columns]
        return f"LatticeBasis(columns={cols})"

    def is_integral(self):
        return intmat.is_integral(self.matrix)

    def scaled(self, c):
        c = Fraction(c)
        mod = None if self.modulus is None else self.modulus * c
        if mod is not None and mod.denominator != 1:
            mod = None
        return LatticeBasis([[c * x for x in row] for row in self.matrix],
                            None if mod is None else int(mod))

    def hnf(self):
        return hnf(self.canonical) if self.is_integral() else LatticeBasis.from_columns(self.canonical, self.modulus)

    def to_json(self):
        def enc(x):
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else str(x)
        return {
            "n": self.n,
            "basis": [[enc(x) for x in c] for c in self.columns],
            "hnf": [[enc(x) for x in c] for c in self.canonical],
            "volume": str(volume(self)),
        }


def hnf(columns, modulus=None):
    """Canonical basis for the integer span of ``columns`` (may be more than n)."""
    columns = [tuple(int(x) for x in c) for c in columns]
    if not columns:
        raise RankDeficient("no columns")
    n = len(columns[0])
    H = intmat.hnf_columns(columns, n)
    basis = LatticeBasis.from_columns(H, modulus)
    basis.__dict__["canonical"] = tuple(tuple(Fraction(x) for x in c) for c in H)
    return basis


def volume(basis):
    return abs(intmat.det(basis.matrix))


def dual_basis(basis):
    """(M^T)^-1, the basis of the dual lattice."""
    return LatticeBasis(intmat.transpose(intmat.inverse(basis.matrix)))


def member(x, basis):
    """True iff M^-1 x is an integer vector."""
    coeffs = intmat.matvec(intmat.inverse(basis.matrix), [Fraction(v) for v in x])
    return all(c.denominator == 1 for c in coeffs)


def exponent(basis):
    """Smallest N > 0 with N Z^n inside an integer lattice (lcm of denominators of M^-1)."""
    if not basis.is_integral():
        raise ValueError("exponent is defined here for integer lattices only")
    return intmat.common_denominator(intmat.inverse(basis.matrix))


def _norm_pow(v, p):
    if p == inf:
        return max(abs(Fraction(x)) for x in v)
    return sum(abs(Fraction(x)) ** p for x in v)


def _scale_pow(value, s, p):
    # distance of (1/s) L from that of L, in the d**p (or d for inf) convention
    return Fraction(value) / (s if p == inf else Fraction(s) ** p)


def min_distance(basis, p=2, budget=None):
    """Exact minimum L_P distance: d**p for finite p, d itself for p = inf.

    Integer lattices go through the coset method: with N Z^n inside the
    lattice, every nonzero vector reduces to a nonzero residue r in
    [0, N)^n or lies in N Z^n, and min over such vectors of ||x||_P is the
    smaller of N and the min P-Lee norm (modulus N) over nonzero residues.
    When the N^n / vol cosets exceed the budget, an exact short-vector
    enumeration on an LLL-reduced basis is used instead.  Rational lattices
    are scaled to integers first.
    """
    budget = default_budget() if budget is None else budget
    s = intmat.common_denominator(basis.matrix)
    if s != 1:
        return _scale_pow(min_distance(basis.scaled(s), p, budget), s, p)
    N = exponent(basis)
    size = N**basis.n // volume(basis)
    if size > budget:
        return min_distance_enum(basis, p, budget)
    cols = [[int(x) % N for x in c] for c in basis.columns]
    code = ZqCode(N, basis.n, cols)
    arr = code.array(budget)
    nz = arr[arr.any(axis=1)]
    cap = N if p == inf else N**p
    if not len(nz):
        return Fraction(cap)
    return Fraction(min(cap, int(_norms(nz, N, p).min())))


def lll_rows(basis):
    """LLL-reduced basis vectors of an integer lattice (sympy, exact, delta = 3/4)."""
    rows = [[ZZ(int(x)) for x in c] for c in basis.columns]
    red = DomainMatrix(rows, (basis.n, basis.n), ZZ).lll()
    return [[int(x) for x in row] for row in red.to_Matrix().tolist()]


def _gram_schmidt(rows):
    n = len(rows)
    bstar, mu, norms = [], [[Fraction(0)] * n for _ in range(n)], []
    for i, b in enumerate(rows):
        v = [Fraction(x) for x in b]
        for j in range(i):
            mu[i][j] = sum(Fraction(x) * y for x, y in zip(b, bstar[j])) / norms[j]
            v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(sum(x * x for x in v))
    return mu, norms


def short_vectors(rows, bound, budget):
    """All nonzero integer combinations v of rows with ||v||_2^2 <= bound (Fincke-Pohst, exact)."""
    n = len(rows)
    mu, B = _gram_schmidt(rows)
    bound = Fraction(bound)
    coeffs = [0] * n
    out = []
    visited = [0]

    def walk(k, rem):
        visited[0] += 1
        if visited[0] > budget:
            raise BudgetExceeded(visited[0], budget, "short-vector enumeration")
        c = -sum(coeffs[j] * mu[j][k] for j in range(k + 1, n))
        # integers x with (x - c)^2 B_k <= rem
        r = (float(rem / B[k])) ** 0.5
        lo, hi = int(floor(float(c) - r)) - 1, int(floor(float(c) + r)) + 1
        for x in range(lo, hi + 1):
            t = (x - c) ** 2 * B[k]
            if t > rem:
                continue
            coeffs[k] = x
            if k == 0:
                if any(coeffs):
                    out.append([sum(coeffs[i] * rows[i][j] for i in range(n)) for j in range(n)])
            else:
                walk(k - 1, rem - t)
        coeffs[k] = 0

    walk(n - 1, bound)
    return out


def min_distance_enum(basis, p=2, budget=None):
    """Exact d_P of an integer lattice by enumeration on an LLL-reduced basis.

    The L2 search radius comes from the shortest reduced vector in the
    L_P norm, using ||v||_2 <= ||v||_P for P <= 2 and ||v||_2 <= sqrt(n) ||v||_P
    beyond.
    """
    budget = default_budget() if budget is None else budget
    if not basis.is_integral():
        raise ValueError("enumeration is implemented for integer lattices")
    rows = lll_rows(basis)
    n = basis.n
    best = min(_norm_pow(r, p) for r in rows)
    # an L2 ball holding every v with ||v||_P <= current best
    if p == inf:
        bound = n * best**2
    elif p <= 2:
        bound = _root_ceil(best, p) ** 2
    else:
        bound = n * _root_ceil(best, p) ** 2
    for v in short_vectors(rows, bound, budget):
        best = min(best, _norm_pow(v, p))
    return Fraction(best)


def _root_ceil(x, p):
    # smallest integer t with t**p >= x
    t = int(round(float(x) ** (1.0 / p)))
    while t**p < x:
        t += 1
    while t > 0 and (t - 1) ** p >= x:
        t -= 1
    return t


def _floor_norm(v, p):
    # floor of ||v||_P for an integer vector, exactly
    if p == inf:
        return max(abs(int(x)) for x in v)
    s = sum(abs(int(x)) ** p for x in v)
    t = int(round(s ** (1.0 / p)))
    while t**p > s:
        t -= 1
    while (t + 1) ** p <= s:
        t += 1
    return t


def min_distance_box(basis, p=2, radius=None, budget=None):
    """Brute force over integer points with ||x||_inf <= radius.

    Independent of the coset method.  The default radius is the floor of
    the smallest L_P norm among the basis columns: it bounds d_P, and
    ||x||_inf <= ||x||_P, so the box holds a shortest vector.  Integer
    lattices only.
    """
    budget = default_budget() if budget is None else budget
    if radius is None:
        radius = min(_floor_norm(c, p) for c in basis.columns)
    radius = int(radius)
    count = (2 * radius + 1) ** basis.n
    if count > budget:
        raise BudgetExceeded(count, budget, "box enumeration")
    inv = intmat.inverse(basis.matrix)
    s = intmat.common_denominator(inv)
    A = np.array([[int(x * s) for x in row] for row in inv], dtype=object)
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    pts = np.stack(np.meshgrid(*([axis] * basis.n), indexing="ij"), -1).reshape(-1, basis.n)
    pts = pts[pts.any(axis=1)]
    keep = ~((pts.astype(object) @ A.T) % s).any(axis=1)
    pts = pts[keep.astype(bool)]
    if not len(pts):
        raise ValueError("box contains no nonzero lattice vector")
    return Fraction(min(_norm_pow(x, p) for x in pts.tolist()))


@dataclass(frozen=True)
class GainStats:
    d2_squared: Fraction
    volume: Fraction
    gamma: float
    delta: float


def gain_stats(basis, budget=None):
    """Coding gain d2^2 / vol^(2/n) and center density gamma^(n/2) / 2^n."""
    d2 = min_distance(basis, 2, budget)
    vol = volume(basis)
    n = basis.n
    gamma = float(d2) / float(vol) ** (2.0 / n)
    delta = gamma ** (n / 2.0) / 2.0**n
    return GainStats(d2, vol, gamma, delta)
