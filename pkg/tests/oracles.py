"""Brute-force reference computations used only by the tests.

Everything here works straight from the definitions with Python sets, so
it shares no code path with the package under test.
"""

from fractions import Fraction
from itertools import product
from math import inf


def span(gens, m, n):
    """All Z_m-combinations of gens, by closure under addition."""
    words = {tuple([0] * n)}
    frontier = list(words)
    gens = [tuple(int(x) % m for x in g) for g in gens]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                s = tuple((a + b) % m for a, b in zip(w, g))
                if s not in words:
                    words.add(s)
                    new.append(s)
        frontier = new
    return words


def dual(words, m, n):
    return {x for x in product(range(m), repeat=n)
            if all(sum(a * b for a, b in zip(x, c)) % m == 0 for c in words)}


def lee_norm(v, m, p):
    w = [min(x % m, m - x % m) for x in v]
    if p == inf:
        return max(w)
    return sum(x**p for x in w)


def code_distance(words, m, p):
    return min(lee_norm(w, m, p) for w in words if any(w))


def norm(v, p):
    if p == inf:
        return max(abs(x) for x in v)
    return sum(abs(x) ** p for x in v)


def box_distance(box, N, p, n):
    """Minimum norm over nonzero points of a set invariant under N Z^n, given its [0, N)^n slice."""
    best = N if p == inf else N**p
    r = N
    for x in product(range(-r, r + 1), repeat=n):
        if any(x) and tuple(v % N for v in x) in box:
            best = min(best, norm(x, p))
    return best


def construction_d_box(q, a, n, gens, levels):
    """Lambda_D cap [0, q^a)^n straight from the alpha-coefficient definition."""
    N = q**a
    ks = list(levels) + [0]
    terms = []
    for s in range(1, a + 1):
        for i in range(ks[s], ks[s - 1]):
            terms.append((q ** (a - s), gens[i], q**s))
    pts = {tuple([0] * n)}
    for scale, g, count in terms:
        pts = {tuple((p + al * scale * x) % N for p, x in zip(pt, g))
               for pt in pts for al in range(count)}
    return pts


def construction_dprime_box(q, a, n, gens, levels):
    """Lambda_D' cap [0, q^a)^n from the congruence definition."""
    N = q**a
    rs = [0] + list(levels)
    conds = []
    for i in range(a):
        lo, hi = rs[a - i - 1], rs[a - i]
        for j in range(lo, hi):
            conds.append((gens[j], q ** (i + 1)))
    return {x for x in product(range(N), repeat=n)
            if all(sum(u * v for u, v in zip(x, h)) % mod == 0 for h, mod in conds)}


def lattice_box(columns, N):
    return span(columns, N, len(columns[0]))


def dual_lattice_box_scaled(columns, N):
    """N * dual of the lattice spanned by columns, as a [0, N)^n slice.

    x is in N L^* iff x . c = 0 mod N for every column c.
    """
    n = len(columns[0])
    return {x for x in product(range(N), repeat=n)
            if all(sum(a * b for a, b in zip(x, c)) % N == 0 for c in columns)}


def as_fraction(v):
    return Fraction(v)
