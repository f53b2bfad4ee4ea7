"""Lattices from nested codes: Constructions A, D, D-bar, D' and the dual-chain D."""

from dataclasses import dataclass

import numpy as np

from . import intmat
from .errors import BudgetExceeded, ChainSpecError, NonIntegral, default_budget
from .exact_lattice import LatticeBasis, dual_basis, hnf
from .zq_codes import CodeChain, ZqCode, chain_closed_zero_one


@dataclass(frozen=True)
class LevelMatrix:
    """Base matrix (G_1 or H_a, lifted rows) with its diagonal level multipliers."""

    q: int
    a: int
    n: int
    kind: str
    base: tuple
    levels: tuple
    multiplicities: tuple

    @property
    def diagonal(self):
        return tuple(self.q**m for m in self.multiplicities)

    @property
    def stacked(self):
        return tuple(tuple(d * x for x in row) for d, row in zip(self.diagonal, self.base))

    @property
    def modulus(self):
        return self.q**self.a


def stack_matrix(chain):
    """D times the base matrix, D_jj = q^m(j), m(j) = #{l : level_l < j}.

    For a dual chain, rows past r_a get m(j) = a, which makes their
    congruence vacuous.
    """
    if not isinstance(chain, CodeChain):
        raise ChainSpecError("stack_matrix expects a CodeChain")
    return LevelMatrix(chain.q, chain.a, chain.n, chain.kind, chain.generators,
                       chain.levels, tuple(chain.multiplicities()))


def construct_A(code):
    """Lambda_A(C) = sigma(C) + m Z^n, as an HNF basis."""
    m, n = code.modulus, code.length
    cols = [tuple(g) for g in code.generators if any(g)]
    cols += [tuple(m if i == j else 0 for i in range(n)) for j in range(n)]
    return hnf(cols, modulus=m)


def stacked_code(chain):
    """The Z_{q^a} code spanned by the rows of D G_1 (primal view)."""
    pc = chain.as_primal()
    lm = stack_matrix(pc)
    N = lm.modulus
    return ZqCode(N, pc.n, [[x % N for x in row] for row in lm.stacked])


def construct_D(chain):
    """Lambda_D, realised as Lambda_A of the stacked q^a-ary code.

    A dual chain is read through its primal view (the D-perp lattice).
    """
    return construct_A(stacked_code(chain))


def construct_Dperp(chain):
    if chain.kind != "dual":
        raise ChainSpecError("construct_Dperp expects a dual chain")
    return construct_D(chain.as_primal())


# -- Construction D-bar ---------------------------------------------------

def _primal(chain):
    return chain.as_primal()


def dbar_member(x, chain, budget=None):
    """Membership in Gamma_Dbar = q^a Z^n + q^(a-1) sigma(C_1) + ... + sigma(C_a).

    Peels one base-q digit per level, innermost code first.
    """
    pc = _primal(chain)
    q = pc.q
    x = [int(v) for v in x]
    if len(x) != pc.n:
        raise ValueError(f"vector of length {len(x)}, expected {pc.n}")
    for level in range(pc.a, 0, -1):
        r = [v % q for v in x]
        if r not in pc.span(pc.levels[level - 1]):
            return False
        x = [(v - d) // q for v, d in zip(x, r)]
    return True


def dbar_is_lattice(chain, budget=None):
    return chain_closed_zero_one(chain, budget)[0]


def dbar_box(chain, budget=None):
    """Gamma_Dbar intersected with [0, q^a)^n, as a set of tuples."""
    budget = default_budget() if budget is None else budget
    pc = _primal(chain)
    q, a = pc.q, pc.a
    N = q**a
    codes = [pc.span(pc.levels[i]) for i in range(a)]
    total = 1
    for c in codes:
        total *= c.cardinality()
    if total > budget:
        raise BudgetExceeded(total, budget, "D-bar box enumeration")
    acc = np.zeros((1, pc.n), dtype=np.int64)
    for i, c in enumerate(codes, start=1):
        words = c.array(budget) * q ** (a - i)
        acc = (acc[:, None, :] + words[None, :, :]).reshape(-1, pc.n) % N
        acc = np.unique(acc, axis=0)
    return {tuple(int(v) for v in row) for row in acc}


def lattice_box(basis, N, budget=None):
    """Points of an integer lattice containing N Z^n inside [0, N)^n."""
    code = ZqCode(N, basis.n, [[int(x) % N for x in c] for c in basis.columns])
    return {tuple(int(v) for v in row) for row in code.array(budget)}


# -- Construction D' -------------------------------------------------------

def _check_rows(chain):
    lm = stack_matrix(chain)
    return lm, [list(row) for row in lm.stacked]


def _dprime_route_dual(chain):
    # q^a times the dual of Lambda_A(row space of H mod q^a)
    lm, H = _check_rows(chain)
    N, n = lm.modulus, chain.n
    cols = [tuple(row) for row in H if any(row)]
    cols += [tuple(N if i == j else 0 for i in range(n)) for j in range(n)]
    B = hnf(cols)
    return dual_basis(B).scaled(N)


def dprime_dual_code(chain):
    """C^perp = {x in Z_{q^a}^n : H x = 0 mod q^a}, generated via the integer kernel of [H | q^a I]."""
    lm, H = _check_rows(chain)
    N, n = lm.modulus, chain.n
    H = [row for row in H if any(row)]
    if not H:
        gens = [[int(i == j) for i in range(n)] for j in range(n)]
    else:
        m = len(H)
        big = [row + [N if i == k else 0 for k in range(m)] for i, row in enumerate(H)]
        gens = [[v % N for v in vec[:n]] for vec in intmat.integer_kernel(big, n + m)]
    return ZqCode(N, n, [g for g in gens if any(g)])


def _dprime_route_kernel(chain):
    return construct_A(dprime_dual_code(chain))


def dprime_routes(chain):
    """Both characterisations of Lambda_D', returned unreconciled."""
    if chain.kind != "dual":
        raise ChainSpecError("Construction D' expects a dual chain")
    return _dprime_route_dual(chain), _dprime_route_kernel(chain)


def construct_Dprime(chain):
    """Lambda_D' = {x : H x = 0 mod q^a}, cross-checked by two independent routes."""
    r1, r2 = dprime_routes(chain)
    if r1 != r2:
        raise AssertionError(f"Construction D' routes disagree: {r1!r} vs {r2!r}")
    return hnf(r2.canonical, modulus=chain.q**chain.a)


def qahinv_generator(chain):
    """q^a H^-1 as a generator matrix of Lambda_D'.

    Needs r_a = n and sigma(h_1), ..., sigma(h_n) linearly independent as
    integer vectors.  Raises NonIntegral when q^a H^-1 is not integral.
    """
    if chain.kind != "dual":
        raise ChainSpecError("qahinv_generator expects a dual chain")
    n, q = chain.n, chain.q
    if chain.levels[-1] != n:
        raise ChainSpecError(f"needs r_a = n = {n}, got r_a = {chain.levels[-1]}")
    gens = chain.generators[:n]
    if intmat.det(gens) == 0:
        raise ChainSpecError("lifted generators are linearly dependent")
    lm = stack_matrix(chain)
    N = lm.modulus
    inv = intmat.inverse(lm.stacked)
    M = tuple(tuple(N * x for x in row) for row in inv)
    if not intmat.is_integral(M):
        raise NonIntegral(M)
    basis = LatticeBasis(M, modulus=N)
    expected = construct_Dprime(chain)
    if basis != expected:
        raise AssertionError("q^a H^-1 does not generate Lambda_D'")
    return basis


def t42_check(chain):
    """Lambda_D' == q^a (Lambda_Dperp)^*."""
    lhs = construct_Dprime(chain)
    rhs = dual_basis(construct_Dperp(chain)).scaled(chain.q**chain.a)
    return lhs == rhs
