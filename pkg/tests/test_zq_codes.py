from math import inf

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from latq import CodeChain, ZqCode, ZqVector, chain_closed_zero_one, dual_code
from latq.errors import BudgetExceeded, ChainSpecError, UndefinedDistance
from latq.zq_codes import lin_independent, min_distance, order, p_lee_norm, zero_one_add


@st.composite
def small_codes(draw, max_n=3, max_m=8):
    m = draw(st.integers(2, max_m))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n + 1))
    gens = [tuple(draw(st.integers(0, m - 1)) for _ in range(n)) for _ in range(k)]
    return ZqCode(m, n, gens)


def test_order_examples():
    assert order((4, 2), 6) == 3
    assert order((4, 1), 6) == 6
    assert order((0, 0, 0), 6) == 1
    assert order(ZqVector(6, (4, 2))) == 3


@given(st.integers(2, 12), st.lists(st.integers(0, 50), min_size=1, max_size=4))
def test_order_is_least_annihilator(m, v):
    v = [x % m for x in v]
    t = order(v, m)
    assert m % t == 0
    assert all((t * x) % m == 0 for x in v)
    assert all(any((s * x) % m for x in v) for s in range(1, t))


def test_zero_one_examples():
    assert zero_one_add((4, 2), (4, 2), 6) == (1, 0)
    assert zero_one_add((1, 1, 1), (1, 1, 1), 3) == (0, 0, 0)
    assert zero_one_add((5, 3, 0), (0, 0, 0), 6) == (0, 0, 0)
    assert zero_one_add(ZqVector(6, (4, 2)), ZqVector(6, (4, 2))) == ZqVector(6, (1, 0))


def test_zero_one_rejects_mismatch():
    with pytest.raises(ValueError):
        zero_one_add(ZqVector(6, (1,)), ZqVector(5, (1,)))
    with pytest.raises(ValueError):
        zero_one_add((1, 2), (1,), 6)


@given(st.integers(2, 10), st.data())
def test_carry_identity(q, data):
    n = data.draw(st.integers(1, 5))
    x = [data.draw(st.integers(0, q - 1)) for _ in range(n)]
    y = [data.draw(st.integers(0, q - 1)) for _ in range(n)]
    c = zero_one_add(x, y, q)
    s = [(a + b) % q for a, b in zip(x, y)]
    assert s == [a + b - q * ci for a, b, ci in zip(x, y, c)]


def test_enumeration_examples():
    assert ZqCode(6, 2, [(1, 2)]).cardinality() == 6
    assert ZqCode(9, 3, [(1, 1, 1), (0, 0, 3)]).cardinality() == 27
    assert ZqCode(5, 3, []).codewords() == [(0, 0, 0)]


@settings(max_examples=80, deadline=None)
@given(small_codes())
def test_enumeration_matches_closure(code):
    words = code.codewords()
    assert len(words) == len(set(words)) == code.cardinality()
    assert set(words) == oracles.span(code.generators, code.modulus, code.length)
    assert words == sorted(words)


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        ZqCode(9, 3, [(1, 1, 1), (0, 0, 3)]).array(budget=10)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("LATQ_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        ZqCode(6, 2, [(1, 2)]).array()


def test_dual_examples():
    d = dual_code(ZqCode(6, 2, [(1, 2)]))
    assert d.same_set(ZqCode(6, 2, [(4, 1)]))
    assert d.cardinality() * 6 == 36
    full = ZqCode(4, 2, [(1, 0), (0, 1)])
    assert dual_code(full).codewords() == [(0, 0)]


@settings(max_examples=80, deadline=None)
@given(small_codes())
def test_duality_against_brute_force(code):
    m, n = code.modulus, code.length
    words = oracles.span(code.generators, m, n)
    d = dual_code(code)
    assert set(d.codewords()) == oracles.dual(words, m, n)
    assert code.cardinality() * d.cardinality() == m**n
    assert set(dual_code(d).codewords()) == words


@settings(max_examples=50, deadline=None)
@given(small_codes(), st.data())
def test_dual_reverses_inclusion(code, data):
    k = data.draw(st.integers(0, len(code.generators)))
    sub = ZqCode(code.modulus, code.length, code.generators[:k])
    big_dual, small_dual = dual_code(code), dual_code(sub)
    assert all(g in small_dual for g in big_dual.generators)


def test_min_distance_examples():
    assert min_distance(ZqCode(6, 2, [(4, 1)]), 2) == 5
    c = ZqCode(3, 3, [(1, 1, 1)])
    assert min_distance(c, inf) == 1
    assert min_distance(c, 1) == 3
    with pytest.raises(UndefinedDistance):
        min_distance(ZqCode(3, 3, []), 2)


@settings(max_examples=60, deadline=None)
@given(small_codes(), st.sampled_from([1, 2, 3, inf]))
def test_min_distance_pairwise(code, p):
    words = oracles.span(code.generators, code.modulus, code.length)
    if len(words) < 2:
        return
    m = code.modulus
    pair = min(oracles.lee_norm([x - y for x, y in zip(u, v)], m, p)
               for u in words for v in words if u != v)
    assert min_distance(code, p) == pair


def test_p_lee_norm():
    assert p_lee_norm((5, 3), 6, 1) == 4
    assert p_lee_norm((5, 3), 6, inf) == 3


def test_lin_independent_examples():
    assert lin_independent([(1, 5), (4, 1)], 6)
    assert not lin_independent([(4, 1), (3, 0)], 6)
    assert not lin_independent([(0, 0)], 6)


@settings(max_examples=60, deadline=None)
@given(small_codes(max_n=2, max_m=6))
def test_lin_independent_by_sweep(code):
    from itertools import product
    m, gens = code.modulus, code.generators
    dependent = any(any(al) and all(sum(a * g[i] for a, g in zip(al, gens)) % m == 0
                                    for i in range(code.length))
                    for al in product(range(m), repeat=len(gens)))
    assert lin_independent(gens, m) == (not dependent)


def test_closure_examples(dual6, primal3, binary4):
    ok, w = chain_closed_zero_one(dual6)
    assert not ok and w == ((4, 2), (4, 2), 2)
    assert chain_closed_zero_one(primal3) == (True, None)
    assert chain_closed_zero_one(binary4) == (True, None)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(1, 3), st.data())
def test_closure_against_brute_force(q, n, data):
    k1 = data.draw(st.integers(1, n))
    gens = [tuple(data.draw(st.integers(0, q - 1)) for _ in range(n)) for _ in range(k1)]
    k2 = data.draw(st.integers(0, k1))
    chain = CodeChain(q, n, 2, "primal", gens, (k1, k2))
    inner = oracles.span(gens[:k2], q, n)
    outer = oracles.span(gens, q, n)
    expect = all(zero_one_add(x, y, q) in outer for x in inner for y in inner)
    ok, w = chain_closed_zero_one(chain)
    assert ok == expect
    if not ok:
        c1, c2, level = w
        assert level == 2 and zero_one_add(c1, c2, q) not in outer


def test_chain_validation():
    with pytest.raises(ChainSpecError):
        CodeChain(6, 2, 2, "primal", [(1, 5)], (1, 2))
    with pytest.raises(ChainSpecError):
        CodeChain(6, 2, 2, "dual", [(4, 2), (0, 1)], (2, 1))
    with pytest.raises(ChainSpecError):
        CodeChain(6, 2, 1, "dual", [(7, 2)], (1,))
    with pytest.raises(ChainSpecError):
        CodeChain.from_dict({"q": 6})


def test_chain_roundtrip(dual6):
    assert CodeChain.from_dict(dual6.to_dict()).to_dict() == dual6.to_dict()
    assert dual6.multiplicities() == [0, 1]
    assert dual6.as_primal().levels == (2, 1)
