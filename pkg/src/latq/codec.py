"""Multistage encoding and decoding for Construction D' over Z_q.

A lattice point is written x = x_0 + q x_1 + ... + q^a x_a where
H_a x_i = u~_(a-i) for i < a and H_a x_a = z.  Here u~_t carries the
level-t message digits on positions j > r_t and zeros elsewhere, so x_i
reduces mod q into C_(a-i).  The decoder peels these components one stage
at a time, most protected code first.
"""

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import intmat
from .constructions import stack_matrix
from .errors import StackError
from .zq_codes import CodeChain, dual_code


class CenteredAlphabet:
    """Centred representatives of Z_q: symmetric for odd q, one extra negative for even q."""

    def __init__(self, q):
        self.q = int(q)
        lo = -(self.q // 2)
        self.values = tuple(range(lo, lo + self.q))

    def __contains__(self, v):
        return v in self.values

    def __len__(self):
        return self.q

    def lift(self, r):
        """Centred representative of the residue of r."""
        r = int(r) % self.q
        lo = self.values[0]
        return r if r < lo + self.q else r - self.q

    def lift_array(self, arr):
        lo = self.values[0]
        return (np.asarray(arr) - lo) % self.q + lo


@dataclass(frozen=True)
class MultistageMessage:
    """digits maps (t, j), 1-based with t <= m(j), to a centred digit; z is the free integer part."""

    digits: dict
    z: tuple

    def to_json(self):
        return {"digits": [[t, j, v] for (t, j), v in sorted(self.digits.items())],
                "z": list(self.z)}

    @classmethod
    def from_json(cls, d):
        return cls({(int(t), int(j)): int(v) for t, j, v in d["digits"]},
                   tuple(int(v) for v in d["z"]))

    def check(self, mult, q):
        alpha = CenteredAlphabet(q)
        n = len(mult)
        if len(self.z) != n:
            raise ValueError(f"z has length {len(self.z)}, expected {n}")
        for (t, j), v in self.digits.items():
            if not (1 <= j <= n and 1 <= t <= mult[j - 1]):
                raise ValueError(f"digit ({t}, {j}) outside the level profile {list(mult)}")
            if v not in alpha:
                raise ValueError(f"digit {v} is not a centred representative mod {q}")

    def level_vector(self, t, n):
        """u~_t: level-t digits placed at their positions, zeros elsewhere."""
        return [self.digits.get((t, j), 0) for j in range(1, n + 1)]


def assemble_b(msg, lm):
    """b_j = sum_t q^(m(j)-t) u_(t,j) + q^m(j) z_j, cross-checked against b = D(sum_t q^-t u~_t + z)."""
    q, a, n = lm.q, lm.a, lm.n
    mult = lm.multiplicities
    msg.check(mult, q)
    b = []
    for j in range(1, n + 1):
        m = mult[j - 1]
        v = sum(q ** (m - t) * msg.digits.get((t, j), 0) for t in range(1, m + 1))
        b.append(v + q**m * msg.z[j - 1])
    inner = [Fraction(z) for z in msg.z]
    for t in range(1, a + 1):
        ut = msg.level_vector(t, n)
        inner = [s + Fraction(u, q**t) for s, u in zip(inner, ut)]
    lemma = [d * s for d, s in zip(lm.diagonal, inner)]
    if lemma != [Fraction(v) for v in b]:
        raise AssertionError(f"digit form {b} and lemma form {lemma} disagree")
    return b


class DecoderStack:
    """Dual chain completed to n rows with det(H_a) = +-1, plus enumerated stage codes.

    Stage i (0 <= i < a) decodes in C_(a-i); the completion rows past r_a
    carry no constraint.
    """

    def __init__(self, chain, budget=None):
        if not isinstance(chain, CodeChain) or chain.kind != "dual":
            raise StackError("decoder needs a dual chain")
        n, q, a = chain.n, chain.q, chain.a
        if len(chain.generators) != n:
            raise StackError(f"H_a must have n = {n} rows (supply completion rows), got {len(chain.generators)}")
        self.chain = chain
        self.q, self.a, self.n = q, a, n
        self.Ha = [list(g) for g in chain.generators]
        det = intmat.det(self.Ha)
        if abs(det) != 1:
            raise StackError(f"det of the integer lift of H_a is {det}, must be +-1")
        inv = intmat.inverse(self.Ha)
        self.Ha_inv = np.array([[int(x) for x in row] for row in inv], dtype=object)
        self.Ha_np = np.array(self.Ha, dtype=object)
        self.lm = stack_matrix(chain)
        self.H = [list(row) for row in self.lm.stacked]
        self.alphabet = CenteredAlphabet(q)
        self.codes = [dual_code(chain.span(chain.levels[a - i - 1])) for i in range(a)]
        self.words = [c.array(budget) for c in self.codes]
        for i in range(a - 1):
            outer = {tuple(w) for w in self.words[i + 1].tolist()}
            if any(tuple(w) not in outer for w in self.words[i].tolist()):
                raise StackError("stage codes are not nested")

    @property
    def multiplicities(self):
        return self.lm.multiplicities

    def random_message(self, rng, z_window=2):
        digits = {}
        for j, m in enumerate(self.multiplicities, start=1):
            for t in range(1, m + 1):
                digits[(t, j)] = int(rng.choice(self.alphabet.values))
        z = tuple(int(v) for v in rng.integers(-z_window, z_window + 1, size=self.n))
        return MultistageMessage(digits, z)


def encode(msg, stack):
    """x = q^a H^-1 b, exact; the result satisfies H x = 0 mod q^a."""
    b = assemble_b(msg, stack.lm)
    N = stack.q**stack.a
    inv = intmat.inverse(stack.H)
    x = [N * s for s in intmat.matvec(inv, b)]
    if any(v.denominator != 1 for v in x):
        raise AssertionError(f"non-integral encoding {x}")
    x = [int(v) for v in x]
    if any(v % N for v in intmat.matvec(stack.H, x)):
        raise AssertionError("encoded point fails the check equations")
    return x


def _solve(stack, rhs):
    return [int(v) for v in stack.Ha_inv.dot(np.array(rhs, dtype=object))]


def split_components(x, stack):
    """(x_0, ..., x_a) with x = sum q^i x_i, H_a x_i centred-digit vectors and H_a x_a = z."""
    q, a = stack.q, stack.a
    N = q**a
    if any(v % N for v in intmat.matvec(stack.H, x)):
        raise ValueError(f"{list(x)} is not in the lattice")
    comps = []
    rest = [int(v) for v in x]
    for i in range(a):
        u = [stack.alphabet.lift(v) for v in intmat.matvec(stack.Ha, rest)]
        xi = _solve(stack, u)
        if tuple(v % q for v in xi) not in stack.codes[i]:
            raise AssertionError(f"component {i} does not reduce into its stage code")
        comps.append(xi)
        rest = [(r - c) // q for r, c in zip(rest, xi)]
    comps.append(rest)
    return comps


def fold(y, q, mode="plain"):
    """Reduce a real vector into [0, q); mode "symmetric" is |mod_q(y + u) - u| with u = floor(q/2)."""
    y = np.asarray(y, dtype=float)
    if mode == "plain":
        return np.mod(y, q)
    if mode == "symmetric":
        u = q // 2
        return np.abs(np.mod(y + u, q) - u)
    raise ValueError(f"unknown fold mode {mode!r}")


def nearest_codeword(words, yf, q):
    """Codeword minimising the Lee-folded squared distance; ties go to the lexicographically smallest."""
    words = np.asarray(words)
    diff = np.abs(np.asarray(yf, dtype=float)[None, :] - words)
    diff = np.minimum(diff, q - diff)
    cost = (diff * diff).sum(axis=1)
    return tuple(int(v) for v in words[int(np.argmin(cost))])


def _round_half_away(v):
    return np.sign(v) * np.floor(np.abs(v) + 0.5)


def decode(y, stack, mode="plain"):
    """Multistage decoder; returns the lattice point estimate as a list of ints."""
    q, a = stack.q, stack.a
    yi = np.asarray(y, dtype=float)
    total = [0] * stack.n
    scale = 1
    for i in range(a):
        c = nearest_codeword(stack.words[i], fold(yi, q, mode), q)
        u = [stack.alphabet.lift(v) for v in intmat.matvec(stack.Ha, c)]
        xi = _solve(stack, u)
        total = [t + scale * v for t, v in zip(total, xi)]
        yi = (yi - np.array(xi, dtype=float)) / q
        scale *= q
    last = [int(v) for v in _round_half_away(yi)]
    return [t + scale * v for t, v in zip(total, last)]


def simulate(stack, sigma, trials, seed, z_window=2):
    """Word error rate over Gaussian noise.

    Trial k draws its message and noise from np.random.default_rng((seed, k)),
    so the outcome does not depend on how trials are scheduled.
    """
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    errors = 0
    for k in range(trials):
        rng = np.random.default_rng((seed, k))
        x = encode(stack.random_message(rng, z_window), stack)
        y = np.array(x, dtype=float) + rng.normal(0.0, sigma, size=stack.n)
        if decode(y, stack) != x:
            errors += 1
    return {"sigma": sigma, "trials": trials, "errors": errors, "wer": errors / trials, "seed": seed}


def simulation_csv(stack, sigmas, trials, seed):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sigma", "trials", "errors", "wer", "seed"])
    for s in sigmas:
        r = simulate(stack, s, trials, seed)
        w.writerow([f"{r['sigma']:.12g}", r["trials"], r["errors"], f"{r['wer']:.12g}", r["seed"]])
    return buf.getvalue()
