"""Bound ledgers: volumes, distance formulas, transference, coding gain.

Distances follow the package convention: for finite P a value is d**P
(an int or Fraction), for P = inf it is d itself.  Every pass/fail decision
is an exact comparison between integer or rational powers; floats appear
only as informational fields.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import inf, pi, sqrt

import numpy as np

from . import constructions as cons
from .errors import BudgetExceeded, ChainSpecError, NotClosed, UndefinedDistance, default_budget
from .exact_lattice import dual_basis, gain_stats, hnf, min_distance as lattice_distance, volume
from .zq_codes import _norms, chain_closed_zero_one, dual_code, lin_independent, order
from .zq_codes import min_distance as code_distance


# gamma_n ** n, exact, for the dimensions where the densest lattice is known
HERMITE_POWER = {
    1: Fraction(1), 2: Fraction(4, 3), 3: Fraction(2), 4: Fraction(4),
    5: Fraction(8), 6: Fraction(64, 3), 7: Fraction(64), 8: Fraction(256),
}


class HermiteTable:
    """Exact gamma_n ** n for n <= 8; beyond that the weaker gamma_n <= n."""

    @staticmethod
    def power(n):
        """(gamma_n ** n, exact) where exact is False when n ** n stands in."""
        if n in HERMITE_POWER:
            return HERMITE_POWER[n], True
        return Fraction(n) ** n, False

    @staticmethod
    def value(n):
        g, _ = HermiteTable.power(n)
        return float(g) ** (1.0 / n)


def root_le(a, x, b, y):
    """a ** (1/x) <= b ** (1/y) for a, b >= 0 and positive integers x, y."""
    return Fraction(a) ** y <= Fraction(b) ** x


def _enc(v):
    if v is None:
        return None
    if v == inf:
        return "inf"
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else str(v)


def sig12(x):
    """Float rounded to 12 significant digits (the fixed output format)."""
    return float(f"{x:.12g}")


def _p_label(p):
    return "inf" if p == inf else int(p)


@dataclass
class BoundReport:
    """One ledger entry.

    ``relation`` states how ``value`` compares with ``bound`` ("<=", ">=",
    "=" or "in" for a two-sided range held in ``extra``).  ``asserted`` is
    False for statements that are reported but known not to hold in general.
    """

    quantity: str
    bound: object = None
    value: object = None
    relation: str = "="
    holds: bool = True
    attained: bool = False
    asserted: bool = True
    status: str = "ok"
    flags: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    note: str = ""

    def to_json(self):
        out = {
            "quantity": self.quantity,
            "status": self.status,
            "relation": self.relation,
            "bound": _enc(self.bound),
            "value": _enc(self.value),
            "holds": self.holds,
            "attained": self.attained,
            "asserted": self.asserted,
            "flags": dict(sorted(self.flags.items())),
        }
        if self.extra.get("P") == 2 and self.value is not None:
            out["value_sq"] = _enc(self.value)
        if self.extra:
            out["extra"] = {k: (_enc(v) if isinstance(v, (int, Fraction)) and not isinstance(v, bool) else v)
                            for k, v in sorted(self.extra.items())}
        if self.note:
            out["note"] = self.note
        return out


def refusal(quantity, exc):
    """Structured entry for a computation the hypotheses do not cover."""
    extra = {}
    if isinstance(exc, NotClosed):
        c1, c2, level = exc.witness
        extra["witness"] = [list(c1), list(c2)]
        extra["level"] = level
    return BoundReport(quantity, relation="none", holds=True, asserted=False,
                       status="refused", extra=extra, note=str(exc))


# -- volume ----------------------------------------------------------------

def _order_factor(gens, q):
    f = Fraction(1)
    for g in gens:
        f *= Fraction(q, order(g, q))
    return f


def _leading(g, last):
    idx = [i for i, x in enumerate(g) if x]
    return idx[-1] if last else idx[0]


def _t2_variant(gens, q, last):
    if len({_leading(g, last) for g in gens}) != len(gens):
        return False
    for g in gens:
        piv = g[_leading(g, last)]
        if q % piv or any(x % piv for x in g):
            return False
    return True


def t2_applicable(chain):
    """Triangular-condition check; returns (applicable, exact |C| or None).

    Needs k_1 = n (r_a = n for a dual chain), nonzero generators, pivots at
    distinct positions (first nonzero entry for the upper-triangular form,
    last nonzero entry for the lower one) and each pivot dividing q and the
    other entries of its row.
    """
    q, n = chain.q, chain.n
    gens = chain.constraint_generators
    top = chain.levels[0] if chain.kind == "primal" else chain.levels[-1]
    if top != n or len(gens) != n or any(not any(g) for g in gens):
        return False, None
    if not (_t2_variant(gens, q, False) or _t2_variant(gens, q, True)):
        return False, None
    card = Fraction(q) ** sum(chain.levels) / _order_factor(gens, q)
    actual = cons.stacked_code(chain).cardinality()
    if card != actual:
        raise AssertionError(f"triangular formula gives {card}, enumeration {actual}")
    return True, int(card)


def volume_bound(chain):
    """Generator-order bound on the volume, compared with the exact volume.

    The counting argument bounds |C| = |Lambda cap [0, q^a)^n| from above by
    q^(sum of levels) / prod(q / O(g_i)).  For Construction D this is a
    lower bound on the volume q^(an) / |C|; for Construction D' (volume |C|)
    it is an upper bound.
    """
    q, n, a = chain.q, chain.n, chain.a
    gens = chain.constraint_generators
    card_bound = Fraction(q) ** sum(chain.levels) / _order_factor(gens, q)
    li = lin_independent(gens, q)
    t2, _ = t2_applicable(chain)
    flags = {"linear_independence": li, "triangular": t2}
    if chain.kind == "primal":
        vol = volume(cons.construct_D(chain))
        bound = Fraction(q) ** (a * n) / card_bound
        rel, holds = ">=", vol >= bound
        extra = {"li_volume": Fraction(q) ** (a * n - sum(chain.levels))} if li else {}
        qty = "volume_D"
    else:
        vol = volume(cons.construct_Dprime(chain))
        bound = card_bound
        rel, holds = "<=", vol <= bound
        extra = {"li_volume": Fraction(q) ** sum(chain.levels)} if li else {}
        qty = "volume_Dprime"
    attained = vol == bound
    if (li or t2) and not attained:
        raise AssertionError(f"{qty}: independence/triangular case must attain {bound}, got {vol}")
    if not holds:
        raise AssertionError(f"{qty}: volume {vol} violates bound {bound}")
    return BoundReport(qty, bound, vol, rel, holds, attained, flags=flags, extra=extra)


# -- distances ---------------------------------------------------------------

def _scale(d, c, p):
    # distance of c * x in the power convention
    return Fraction(d) * (Fraction(c) if p == inf else Fraction(c) ** p)


def _cap(N, p):
    return Fraction(N) if p == inf else Fraction(N) ** p


def dbar_formula(chain, p=2, budget=None):
    """min{q^a, q^(a-1) d_P(C_1), ..., d_P(C_a)} on the primal view."""
    pc = chain.as_primal()
    q, a = pc.q, pc.a
    codes = [pc.span(pc.levels[i]) for i in range(a)]
    if codes[-1].cardinality() == 1:
        raise UndefinedDistance("innermost code is zero")
    terms = [_cap(q**a, p)]
    for i, c in enumerate(codes, start=1):
        if c.cardinality() > 1:
            terms.append(_scale(code_distance(c, p, budget), q ** (a - i), p))
    return min(terms)


def _gamma_distance(chain, p, budget):
    # min ||x - y|| over distinct x, y in Gamma_Dbar.  Gamma need not be a
    # group, so this runs over differences of box points mod q^a; the cap
    # q^a covers x - y in q^a Z^n.
    pc = chain.as_primal()
    N = pc.q**pc.a
    budget = default_budget() if budget is None else budget
    pts = np.array(sorted(cons.dbar_box(chain, budget)), dtype=np.int64)
    if len(pts) ** 2 > budget:
        raise BudgetExceeded(len(pts) ** 2, budget, "D-bar difference set")
    diffs = ((pts[:, None, :] - pts[None, :, :]) % N).reshape(-1, pc.n)
    diffs = diffs[diffs.any(axis=1)]
    best = _cap(N, p)
    if len(diffs):
        best = min(best, Fraction(int(_norms(diffs, N, p).min())))
    return best


def dbar_hull(chain, budget=None):
    """Lambda_Dbar, the smallest lattice containing Gamma_Dbar."""
    pc = chain.as_primal()
    N, n = pc.q**pc.a, pc.n
    cols = [pt for pt in cons.dbar_box(chain, budget) if any(pt)]
    cols += [tuple(N if i == j else 0 for i in range(n)) for j in range(n)]
    return hnf(cols, modulus=N)


def dbar_distance(chain, p=2, budget=None):
    """Distance formula for Gamma_Dbar, checked against enumeration.

    The formula is compared with the pairwise distance of Gamma_Dbar itself
    (equality), with its lattice hull Lambda_Dbar (upper bound) and, for a
    chain closed under zero-one addition, with Lambda_D (equality).  The
    reported value is d_P(Lambda_Dbar).
    """
    formula = dbar_formula(chain, p, budget)
    gamma = _gamma_distance(chain, p, budget)
    if gamma != formula:
        raise AssertionError(f"Gamma_Dbar distance {gamma} differs from formula {formula}")
    closed, _ = chain_closed_zero_one(chain, budget)
    hull = dbar_hull(chain, budget)
    d_hull = lattice_distance(hull, p, budget)
    if d_hull > formula:
        raise AssertionError(f"Lambda_Dbar distance {d_hull} exceeds the formula {formula}")
    d_D = lattice_distance(cons.construct_D(chain), p, budget)
    if closed and (hull != cons.construct_D(chain) or d_D != formula):
        raise AssertionError(f"closed chain: Lambda_D distance {d_D} differs from formula {formula}")
    return BoundReport("dbar_distance", formula, d_hull, "=" if closed else "<=", True,
                       d_hull == formula, flags={"closed": closed},
                       extra={"P": _p_label(p), "gamma_distance": gamma, "lambda_D_distance": d_D})


def dprime_distance(chain, p=2, budget=None):
    """d_P(Lambda_D') = min{d_P(C^perp), q^a} with C^perp the Z_{q^a} kernel code."""
    if chain.kind != "dual":
        raise ChainSpecError("dprime_distance expects a dual chain")
    N = chain.q**chain.a
    code = cons.dprime_dual_code(chain)
    formula = _cap(N, p)
    if code.cardinality() > 1:
        formula = min(formula, Fraction(code_distance(code, p, budget)))
    d = lattice_distance(cons.construct_Dprime(chain), p, budget)
    if d != formula:
        raise AssertionError(f"D' distance {d} differs from min(d(C^perp), q^a) = {formula}")
    return BoundReport("dprime_distance", formula, d, "=", True, True,
                       extra={"P": _p_label(p), "code_size": code.cardinality()})


def _transference_ok(x, n, p, gpow):
    """Exact test of prod <= c * g where x is the product in the power convention.

    gpow is g ** n.  For finite p the product of distances is x ** (1/p) and
    c = n ** (2/p - 1) when p < 2, else 1; for p = inf it is x and c = 1.
    """
    x = Fraction(x)
    if p == inf:
        return x**n <= gpow
    p = int(p)
    c = Fraction(n) ** (max(0, 2 - p) * n)
    return x**n <= c * gpow**p


def dprime_dual_distance(chain, p=2, budget=None):
    """d_P(Lambda_D'^*) from the dual-code distances, plus the induced range for Lambda_D'.

    Refuses with NotClosed unless the dual chain is closed under zero-one
    addition.  The formula value is asserted against the dual lattice.  The
    upper ends of the induced range are transference bounds and are
    asserted; the lower end 1/m is reported only.
    """
    if chain.kind != "dual":
        raise ChainSpecError("dprime_dual_distance expects a dual chain")
    closed, witness = chain_closed_zero_one(chain, budget)
    if not closed:
        raise NotClosed(witness)
    q, a, n = chain.q, chain.a, chain.n
    formula = dbar_formula(chain, p, budget) / _cap(q**a, p)
    lam = cons.construct_Dprime(chain)
    oracle = lattice_distance(dual_basis(lam), p, budget)
    if oracle != formula:
        raise AssertionError(f"dual distance {oracle} differs from formula {formula}")
    d = lattice_distance(lam, p, budget)
    gpow, exact = HermiteTable.power(n)
    x = d * formula
    upper_gamma = _transference_ok(x, n, p, gpow)
    upper_n = _transference_ok(x, n, p, Fraction(n) ** n)
    if not (upper_gamma and upper_n):
        raise AssertionError("transference upper bound violated")
    lower = Fraction(1) / formula
    extra = {"P": _p_label(p), "lattice_distance": d, "lower_stated": lower,
             "lower_holds": d >= lower, "upper_gamma_holds": upper_gamma,
             "upper_n_holds": upper_n, "hermite_exact": exact}
    if p == 2:
        extra["upper_n_squared"] = Fraction(n) ** 2 * lower
        extra["upper_gamma_float"] = sig12(HermiteTable.value(n) / sqrt(float(formula)))
    return BoundReport("dprime_dual_distance", formula, oracle, "=", True, True,
                       flags={"closed": True}, extra=extra)


def binary_dprime_bounds(chain, p=2, budget=None):
    """min{2^a, 2^(a-1) d_P(C_1), ..., d_P(C_a)} <= d_P(Lambda_D') <= 2^a, binary only."""
    if chain.kind != "dual":
        raise ChainSpecError("binary_dprime_bounds expects a dual chain")
    if chain.q != 2:
        raise ChainSpecError("binary_dprime_bounds is only available for q = 2")
    a, n = chain.a, chain.n
    codes = [dual_code(chain.span(r)) for r in chain.levels]
    if codes[-1].cardinality() == 1:
        raise UndefinedDistance("C_a is the zero code")
    if codes[0].cardinality() == 2**n:
        raise ChainSpecError("C_1 must be a proper subcode of Z_2^n")
    terms = [_cap(2**a, p)]
    for i, c in enumerate(codes, start=1):
        terms.append(_scale(code_distance(c, p, budget), 2 ** (a - i), p))
    lower, upper = min(terms), _cap(2**a, p)
    d = lattice_distance(cons.construct_Dprime(chain), p, budget)
    holds = lower <= d <= upper
    if not holds:
        raise AssertionError(f"binary D' bounds violated: {lower} <= {d} <= {upper}")
    return BoundReport("binary_dprime_bounds", None, d, "in", holds, d == lower,
                       extra={"P": _p_label(p), "lower": lower, "upper": upper})


# -- transference --------------------------------------------------------------

def transference(lattice, ps=(2,), budget=None):
    """d_P(L) * d_P(L^*) against gamma_n, n and the numeric literature bounds.

    Only the upper bounds are asserted.  For P = 2 the classical-looking
    lower bound 1 <= d_2(L) d_2(L^*) is evaluated and reported as
    ``lower_holds``; it does not hold in general.
    """
    n = lattice.n
    dual = dual_basis(lattice)
    gpow, exact = HermiteTable.power(n)
    reports = []
    for p in ps:
        d = lattice_distance(lattice, p, budget)
        ds = lattice_distance(dual, p, budget)
        x = d * ds
        up_g = _transference_ok(x, n, p, gpow)
        up_n = _transference_ok(x, n, p, Fraction(n) ** n)
        if not (up_g and up_n):
            raise AssertionError(f"transference upper bound fails for P={p}")
        prod = float(x) if p == inf else float(x) ** (1.0 / p)
        extra = {"P": _p_label(p), "distance": d, "dual_distance": ds,
                 "product_float": sig12(prod), "hermite_exact": exact,
                 "upper_n_holds": up_n}
        if p == 2:
            extra["lower_holds"] = x >= 1
            miller = n / (2 * pi) + 3 * sqrt(n) / pi
            extra["miller_bound"] = sig12(miller)
            extra["miller_holds"] = prod <= miller
        if p == 1:
            l1 = 0.154264 * n**2 * (1 + 2 * pi * sqrt(3 / n)) ** 2
            extra["l1_bound"] = sig12(l1)
            extra["l1_holds"] = prod <= l1
        reports.append(BoundReport("transference", None, x, "<=", True, False,
                                   flags={"n": n}, extra=extra))
    return reports


# -- coding gain -------------------------------------------------------------

def coding_gain_bound(chain, budget=None):
    """Coding-gain expression built from the volume bound and the distance formula.

    Everything is compared through gamma ** n = d2 ** (2n) / vol ** 2.
    For Construction D (closed chain) the distance formula is exact and the
    volume is at least its bound, so the expression is an upper bound on
    gamma, attained in the independent and triangular cases; it is asserted.
    For Construction D' the expression amounts to the transference lower
    bound and is reported without being asserted.
    """
    closed, witness = chain_closed_zero_one(chain, budget)
    if not closed:
        raise NotClosed(witness)
    q, n, a = chain.q, chain.n, chain.a
    gens = chain.constraint_generators
    li = lin_independent(gens, q)
    t2, _ = t2_applicable(chain)
    flags = {"closed": True, "linear_independence": li, "triangular": t2}
    F = dbar_formula(chain, 2, budget)
    order_f = _order_factor(gens, q)
    if chain.kind == "primal":
        lam = cons.construct_D(chain)
        V = Fraction(q) ** (a * n - sum(chain.levels)) * order_f
        bound = F**n / V**2
        rel, asserted = "<=", True
        qty = "coding_gain_D"
    else:
        lam = cons.construct_Dprime(chain)
        W = Fraction(q) ** sum(chain.levels) / order_f
        bound = (Fraction(q) ** (2 * a) / F) ** n / W**2
        rel, asserted = ">=", False
        qty = "coding_gain_Dprime"
    d2 = lattice_distance(lam, 2, budget)
    vol = volume(lam)
    value = d2**n / vol**2
    holds = value <= bound if rel == "<=" else value >= bound
    if asserted and not holds:
        raise AssertionError(f"{qty}: gamma^n {value} exceeds {bound}")
    if asserted and (li or t2) and value != bound:
        raise AssertionError(f"{qty}: independent/triangular case must attain the bound")
    extra = {"gamma": sig12(float(d2) / float(vol) ** (2.0 / n)),
             "bound_gamma": sig12(float(bound) ** (1.0 / n)),
             "d2_squared": d2, "volume": vol}
    return BoundReport(qty, bound, value, rel, holds, value == bound, asserted,
                       flags=flags, extra=extra)


def gain_stats_json(lattice, budget=None):
    g = gain_stats(lattice, budget)
    return {"quantity": "gain_stats", "d2_squared": _enc(g.d2_squared), "volume": _enc(g.volume),
            "gamma": sig12(g.gamma), "delta": sig12(g.delta)}
