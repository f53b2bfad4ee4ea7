"""Seeded random chains for batch checks.

Every draw comes from ``random.Random(seed)``, so a failing chain can be
regenerated from the seed and its position in the sequence.
"""

import random

from .zq_codes import CodeChain, ZqCode

DUAL_QS = (2, 3, 4, 5, 6, 8)
PRIMAL_QS = (2, 3, 4, 6)


def _levels(rng, a, top, increasing):
    lv = sorted(rng.randint(0, top) for _ in range(a - 1)) + [top]
    return lv if increasing else lv[::-1]


def random_dual_chain(rng, qs=DUAL_QS, n_max=4, a_max=3):
    """Dual chain with r_a generators (no completion rows)."""
    q = rng.choice(qs)
    n = rng.randint(1, n_max)
    a = rng.randint(1, a_max)
    ra = rng.randint(1, n)
    gens = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(ra)]
    return CodeChain(q, n, a, "dual", gens, _levels(rng, a, ra, True))


def random_primal_chain(rng, qs=PRIMAL_QS, n_max=4, a_max=3):
    q = rng.choice(qs)
    n = rng.randint(1, n_max)
    a = rng.randint(1, a_max)
    k1 = rng.randint(1, n)
    gens = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(k1)]
    return CodeChain(q, n, a, "primal", gens, _levels(rng, a, k1, False))


def random_binary_dual_chain(rng, n_max=6, a_max=3):
    """Binary dual chain with C_a nonzero and C_1 a proper subcode of Z_2^n."""
    while True:
        n = rng.randint(2, n_max)
        a = rng.randint(1, a_max)
        ra = rng.randint(1, n)
        gens = [tuple(rng.randrange(2) for _ in range(n)) for _ in range(ra)]
        levels = _levels(rng, a, ra, True)
        if ZqCode(2, n, gens).cardinality() == 2**n:
            continue
        if not any(any(g) for g in gens[: levels[0]]):
            continue
        return CodeChain(2, n, a, "dual", gens, levels)


def ensemble(kind, count, seed, **kw):
    rng = random.Random(seed)
    make = {"dual": random_dual_chain, "primal": random_primal_chain,
            "binary": random_binary_dual_chain}[kind]
    return [make(rng, **kw) for _ in range(count)]
