"""Linear codes over Z_m given by ordered generator lists.

A code is never assumed to have a basis: for composite ``m`` a Z_m-module
may not admit one, so everything here works from generators.  Codewords are
tuples of residues in ``[0, m)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd, inf, lcm

import numpy as np

from . import intmat
from .errors import BudgetExceeded, ChainSpecError, UndefinedDistance, default_budget


def lift(v, m):
    """Representatives in [0, m) of an integer vector."""
    return tuple(int(x) % m for x in v)


def reduce(v, m):
    """Componentwise reduction Z^n -> Z_m^n (identical to ``lift`` on residues)."""
    return lift(v, m)


@dataclass(frozen=True)
class ZqVector:
    modulus: int
    coords: tuple

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        coords = tuple(int(c) for c in self.coords)
        if any(not 0 <= c < self.modulus for c in coords):
            raise ValueError(f"coordinates of {coords} not in [0, {self.modulus})")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_ints(cls, v, m):
        return cls(m, lift(v, m))

    def lift(self):
        return self.coords

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def _coords(v):
    return v.coords if isinstance(v, ZqVector) else tuple(v)


def order(v, m=None):
    """Additive order of ``v`` in Z_m^n: lcm over coordinates of m / gcd(m, v_i)."""
    if isinstance(v, ZqVector):
        m = v.modulus
    if m is None:
        raise TypeError("modulus required for a plain sequence")
    return lcm(1, *(m // gcd(m, c % m) for c in _coords(v)))


def zero_one_add(x, y, q=None):
    """Carry indicator of x + y in Z_q^n: 1 where lift(x_i) + lift(y_i) >= q."""
    if isinstance(x, ZqVector) and isinstance(y, ZqVector):
        if x.modulus != y.modulus:
            raise ValueError(f"moduli differ: {x.modulus} vs {y.modulus}")
        if len(x) != len(y):
            raise ValueError("lengths differ")
        q = x.modulus
        return ZqVector(q, tuple(int(a + b >= q) for a, b in zip(x.coords, y.coords)))
    if q is None:
        raise TypeError("modulus required for plain sequences")
    if len(x) != len(y):
        raise ValueError("lengths differ")
    return tuple(int(a % q + b % q >= q) for a, b in zip(x, y))


def lee_weights(arr, m):
    """Per-coordinate Lee weights min(r, m - r) of residues in [0, m)."""
    arr = np.asarray(arr)
    return np.minimum(arr, m - arr)


def p_lee_norm(v, m, p):
    """P-Lee norm of a single word: d**p as an int for finite p, the max for p = inf."""
    w = [min(c % m, m - c % m) for c in v]
    if p == inf:
        return max(w, default=0)
    return sum(x**p for x in w)


def _norms(arr, m, p):
    w = lee_weights(arr, m)
    if p == inf:
        return w.max(axis=1)
    if float(m) ** p * w.shape[1] > 2**62:
        w = w.astype(object)
    return (w**p).sum(axis=1)


class ZqCode:
    """Linear code over Z_m spanned by an ordered list of generators."""

    def __init__(self, modulus, length, generators=()):
        self.modulus = int(modulus)
        self.length = int(length)
        gens = []
        for g in generators:
            if isinstance(g, ZqVector) and g.modulus != self.modulus:
                raise ValueError(f"generator modulus {g.modulus} != {self.modulus}")
            c = lift(_coords(g), self.modulus)
            if len(c) != self.length:
                raise ValueError(f"generator {c} has length {len(c)}, expected {self.length}")
            gens.append(c)
        self.generators = tuple(gens)
        self._cards = None

    def __repr__(self):
        return f"ZqCode(m={self.modulus}, n={self.length}, generators={list(self.generators)})"

    def _prefix_cardinalities(self):
        # |<g_1..g_i>| = m^n / vol(Lambda_A) for every prefix
        if self._cards is None:
            m, n = self.modulus, self.length
            scaled = [tuple(m * int(i == j) for i in range(n)) for j in range(n)]
            cards = [1]
            for i in range(1, len(self.generators) + 1):
                H = intmat.hnf_columns(list(self.generators[:i]) + scaled, n)
                vol = 1
                for k in range(n):
                    vol *= H[k][k]
                cards.append(m**n // vol)
            self._cards = cards
        return self._cards

    def cardinality(self):
        return self._prefix_cardinalities()[-1]

    def __len__(self):
        return self.cardinality()

    def array(self, budget=None):
        """All codewords as a lexicographically sorted (|C|, n) int64 array.

        Each generator extends the running subgroup S by the cosets
        t*g + S, 0 <= t < [S + <g> : S]; the index comes from exact
        cardinalities so the union is disjoint and needs no deduplication.
        """
        budget = default_budget() if budget is None else budget
        size = self.cardinality()
        if size > budget:
            raise BudgetExceeded(size, budget, "code enumeration")
        m, n = self.modulus, self.length
        cards = self._prefix_cardinalities()
        arr = np.zeros((1, n), dtype=np.int64)
        for i, g in enumerate(self.generators):
            k = cards[i + 1] // cards[i]
            if k > 1:
                steps = (np.arange(k, dtype=np.int64)[:, None] * np.array(g, dtype=np.int64)) % m
                arr = ((steps[:, None, :] + arr[None, :, :]) % m).reshape(-1, n)
        if n:
            arr = arr[np.lexsort(arr.T[::-1])]
        return arr

    def codewords(self, budget=None):
        return [tuple(int(x) for x in row) for row in self.array(budget)]

    def __contains__(self, v):
        v = lift(_coords(v), self.modulus)
        if not any(v):
            return True
        m, n = self.modulus, self.length
        cols = list(self.generators) + [tuple(m * int(i == j) for i in range(n)) for j in range(n)]
        H = intmat.hnf_columns(cols, n)
        return _hnf_member(H, v)

    def dual(self):
        return dual_code(self)

    def min_distance(self, p=2, budget=None):
        return min_distance(self, p, budget)

    def same_set(self, other):
        if (self.modulus, self.length) != (other.modulus, other.length):
            return False
        return self.cardinality() == other.cardinality() and all(g in self for g in other.generators)


def _hnf_member(H, v):
    # forward substitution against a lower-triangular column HNF
    v = list(v)
    n = len(v)
    for i in range(n):
        d = H[i][i]
        if v[i] % d:
            return False
        f = v[i] // d
        if f:
            col = H[i]
            for k in range(i, n):
                v[k] -= f * col[k]
    return True


def enumerate_code(code, budget=None):
    """Codewords in lexicographic order together with the cardinality."""
    words = code.codewords(budget)
    return words, len(words)


def dual_code(code):
    """Generators of C^perp = {x : x . y = 0 for all y in C}.

    Works through lattices: with B the HNF of Lambda_A(C), the columns of
    m (B^T)^-1 generate Lambda_A(C^perp); reducing them mod m gives C^perp.
    """
    m, n = code.modulus, code.length
    cols = list(code.generators) + [tuple(m * int(i == j) for i in range(n)) for j in range(n)]
    B = intmat.transpose(intmat.hnf_columns(cols, n))  # rows form, columns are vectors
    Binv_T = intmat.transpose(intmat.inverse(B))
    dual_cols = intmat.transpose([[m * x for x in row] for row in Binv_T])
    gens = []
    for c in dual_cols:
        if any(Fraction(x).denominator != 1 for x in c):
            raise ArithmeticError("scaled dual is not integral")
        r = lift([int(x) for x in c], m)
        if any(r):
            gens.append(r)
    return ZqCode(m, n, gens)


def min_distance(code, p=2, budget=None):
    """Minimum P-Lee distance: d**p (int) for finite p, d for p = inf."""
    arr = code.array(budget)
    nz = arr[arr.any(axis=1)]
    if not len(nz):
        raise UndefinedDistance("the zero code has no minimum distance")
    return int(_norms(nz, code.modulus, p).min())


def lin_independent(generators, m=None):
    """True iff sum a_i g_i = 0 forces every a_i = 0 in Z_m.

    Equivalent to the coefficient map Z_m^k -> C being injective, i.e.
    |C| = m^k, which is decided exactly from the lattice volume.
    """
    gens = list(generators)
    if not gens:
        return True
    if m is None:
        m = gens[0].modulus
    code = ZqCode(m, len(_coords(gens[0])), gens)
    return code.cardinality() == m ** len(gens)


class CodeChain:
    """Nested chain of codes over Z_q with prefix-structured generators.

    ``kind == "primal"``: C_l = <g_1 .. g_{k_l}> with k_1 >= ... >= k_a,
    so C_a is the innermost code.  ``kind == "dual"``: C_l^perp = <h_1 ..
    h_{r_l}> with r_1 <= ... <= r_a.  A dual chain may carry extra
    generators past r_a (completion rows used by the decoder); they never
    constrain the lattice.
    """

    def __init__(self, q, n, a, kind, generators, levels):
        self.q, self.n, self.a = int(q), int(n), int(a)
        self.kind = kind
        self.generators = tuple(tuple(int(x) for x in _coords(g)) for g in generators)
        self.levels = tuple(int(x) for x in levels)
        self._validate()

    def _validate(self):
        q, n, a = self.q, self.n, self.a
        if q < 2:
            raise ChainSpecError("q must be at least 2")
        if n < 1 or a < 1:
            raise ChainSpecError("n and a must be positive")
        if self.kind not in ("primal", "dual"):
            raise ChainSpecError(f"unknown chain kind {self.kind!r}")
        if len(self.levels) != a:
            raise ChainSpecError(f"expected {a} levels, got {len(self.levels)}")
        for g in self.generators:
            if len(g) != n:
                raise ChainSpecError(f"generator {g} has length {len(g)}, expected {n}")
            if any(not 0 <= x < q for x in g):
                raise ChainSpecError(f"generator {g} has entries outside [0, {q})")
        lv = self.levels
        if any(x < 0 for x in lv):
            raise ChainSpecError("levels must be nonnegative")
        if self.kind == "primal":
            if any(lv[i] < lv[i + 1] for i in range(a - 1)):
                raise ChainSpecError("primal levels must be non-increasing")
            if len(self.generators) != lv[0]:
                raise ChainSpecError(f"primal chain needs exactly k_1 = {lv[0]} generators")
        else:
            if any(lv[i] > lv[i + 1] for i in range(a - 1)):
                raise ChainSpecError("dual levels must be non-decreasing")
            if lv[-1] > len(self.generators):
                raise ChainSpecError(f"r_a = {lv[-1]} exceeds the {len(self.generators)} generators")
            if len(self.generators) > n:
                raise ChainSpecError("a dual chain carries at most n generators")

    def __repr__(self):
        return (f"CodeChain(q={self.q}, n={self.n}, a={self.a}, kind={self.kind!r}, "
                f"generators={[list(g) for g in self.generators]}, levels={list(self.levels)})")

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(d["q"], d["n"], d["a"], d["kind"], d["generators"], d["levels"])
        except KeyError as exc:
            raise ChainSpecError(f"missing field {exc.args[0]!r}") from None
        except TypeError as exc:
            raise ChainSpecError(str(exc)) from None

    def to_dict(self):
        return {"q": self.q, "n": self.n, "a": self.a, "kind": self.kind,
                "generators": [list(g) for g in self.generators], "levels": list(self.levels)}

    @property
    def constraint_generators(self):
        """Generators that define the codes (drops dual completion rows)."""
        if self.kind == "dual":
            return self.generators[: self.levels[-1]]
        return self.generators

    def multiplicities(self):
        """m(j) = #{l : level_l < j} for each generator row j (1-based)."""
        return [sum(1 for x in self.levels if x < j) for j in range(1, len(self.generators) + 1)]

    def span(self, k):
        return ZqCode(self.q, self.n, self.generators[:k])

    def code(self, level):
        """C_level for a primal chain; for a dual chain the code C_level itself (a dual computation)."""
        k = self.levels[level - 1]
        if self.kind == "primal":
            return self.span(k)
        return dual_code(self.span(k))

    def dual_code_at(self, level):
        """C_level^perp; for a dual chain this is the prefix span."""
        k = self.levels[level - 1]
        if self.kind == "dual":
            return self.span(k)
        return dual_code(self.span(k))

    def as_primal(self):
        """Chain fed to Construction D: itself if primal, else the reversed dual chain.

        For a dual chain C_1^perp <= ... <= C_a^perp this is the primal chain
        with k_i = r_{a-i+1}, whose i-th code is C_{a-i+1}^perp.
        """
        if self.kind == "primal":
            return self
        return CodeChain(self.q, self.n, self.a, "primal",
                         self.constraint_generators, tuple(reversed(self.levels)))


def _encode_rows(arr, q):
    # base-q integer key per row (rows hold 0/1 carries or residues < q)
    n = arr.shape[1]
    dtype = object if float(q) ** n > 2**62 else np.int64
    weights = np.array([q**i for i in range(n - 1, -1, -1)], dtype=dtype)
    return arr.astype(dtype) @ weights


def chain_closed_zero_one(chain, budget=None):
    """Closure of the chain under zero-one addition.

    Works on the primal view C_a <= ... <= C_1 (a dual chain is read through
    ``as_primal``) and checks c1 * c2 in C_{l-1} for all c1, c2 in C_l,
    l = 2..a.  Returns ``(True, None)`` or ``(False, (c1, c2, l))``.  Pairs of
    generators are tried before the exhaustive sweep so that a violation
    among generators is reported as the witness.
    """
    budget = default_budget() if budget is None else budget
    pc = chain.as_primal()
    q = pc.q
    for level in range(2, pc.a + 1):
        inner = pc.span(pc.levels[level - 1])
        outer = pc.span(pc.levels[level - 2])
        words = inner.array(budget)
        if len(words) ** 2 > budget:
            raise BudgetExceeded(len(words) ** 2, budget, "zero-one closure check")
        outer_keys = set(_encode_rows(outer.array(budget), q).tolist())
        for g1, g2 in combinations_with_replacement(inner.generators, 2):
            s = zero_one_add(g1, g2, q)
            if int(_encode_rows(np.array([s]), q)[0]) not in outer_keys:
                return False, (g1, g2, level)
        for i, c1 in enumerate(words):
            carries = ((c1[None, :] + words[i:]) >= q).astype(np.int64)
            for j, key in enumerate(_encode_rows(carries, q).tolist()):
                if key not in outer_keys:
                    c2 = words[i + j]
                    return False, (tuple(int(x) for x in c1), tuple(int(x) for x in c2), level)
    return True, None
