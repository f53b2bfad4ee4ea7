import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latq import CodeChain, StackError, construct_Dprime, member
from latq.codec import (CenteredAlphabet, DecoderStack, MultistageMessage, assemble_b, decode,
                        encode, fold, nearest_codeword, simulate, simulation_csv,
                        split_components)


@pytest.fixture
def stack(codec6):
    return DecoderStack(codec6)


def msg(digits=None, z=(0, 0)):
    return MultistageMessage(digits or {}, tuple(z))


def unimodular_stacks():
    """A few det +-1 dual stacks over several q and depths."""
    return [
        CodeChain(6, 2, 2, "dual", [(4, 1), (3, 1)], (1, 2)),
        CodeChain(2, 4, 2, "dual", [(1, 1, 1, 1), (0, 0, 0, 1), (0, 1, 0, 0), (0, 0, 1, 0)], (1, 2)),
        CodeChain(3, 3, 3, "dual", [(1, 2, 0), (0, 1, 1), (0, 0, 1)], (1, 2, 2)),
        CodeChain(5, 2, 1, "dual", [(1, 3), (0, 1)], (1,)),
        CodeChain(4, 3, 2, "dual", [(1, 1, 1), (0, 1, 2), (0, 0, 1)], (0, 2)),
    ]


def test_alphabet():
    assert CenteredAlphabet(5).values == (-2, -1, 0, 1, 2)
    assert CenteredAlphabet(6).values == (-3, -2, -1, 0, 1, 2)
    a = CenteredAlphabet(6)
    assert [a.lift(r) for r in range(6)] == [0, 1, 2, -3, -2, -1]
    assert list(a.lift_array([3, 4, 11])) == [-3, -2, -1]


def test_assemble_b_examples(stack):
    lm = stack.lm
    assert assemble_b(msg({(1, 2): 2}, (1, 0)), lm) == [1, 2]
    assert assemble_b(msg(), lm) == [0, 0]
    assert assemble_b(msg(z=(1, 0)), lm) == [1, 0]


def test_assemble_b_rejects_bad_profile(stack):
    with pytest.raises(ValueError):
        assemble_b(msg({(1, 1): 1}), stack.lm)   # m(1) = 0
    with pytest.raises(ValueError):
        assemble_b(msg({(1, 2): 3}), stack.lm)   # 3 is not centred mod 6
    with pytest.raises(ValueError):
        assemble_b(msg(z=(0,)), stack.lm)


def test_encode_examples(stack):
    x = encode(msg({(1, 2): 2}, (1, 0)), stack)
    assert x == [24, -60] and (4 * 24 - 60) % 36 == 0
    assert encode(msg(), stack) == [0, 0]
    assert encode(msg(z=(1, 0)), stack) == [36, -108]


def test_split_examples(stack):
    comps = split_components([24, -60], stack)
    assert comps == [[0, 0], [-2, 8], [1, -3]]
    assert tuple(v % 6 for v in comps[1]) == (4, 2)
    assert split_components([0, 0], stack) == [[0, 0]] * 3
    with pytest.raises(ValueError):
        split_components([1, 0], stack)


def test_fold_examples():
    assert list(fold([4, -10], 6)) == [4, 2]
    assert list(fold([0.0], 6)) == [0]
    assert fold([2.3], 2)[0] == pytest.approx(0.3)
    assert fold([2.3], 2, mode="symmetric")[0] == pytest.approx(0.3)
    with pytest.raises(ValueError):
        fold([0], 2, mode="other")


def test_nearest_codeword_examples(stack):
    assert nearest_codeword(stack.words[1], [4, 2], 6) == (4, 2)
    for w in stack.words[1][:10]:
        assert nearest_codeword(stack.words[1], w, 6) == tuple(w)
    assert nearest_codeword([(0, 0), (1, 1)], [0.5, 0.5], 2) == (0, 0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=4, max_size=4))
def test_fold_modes_agree_at_q2(y):
    words = DecoderStack(unimodular_stacks()[1]).words[1]
    assert nearest_codeword(words, fold(y, 2), 2) == nearest_codeword(words, fold(y, 2, "symmetric"), 2)


def test_decode_examples(stack):
    assert decode([24, -60], stack) == [24, -60]
    assert decode([24.2, -60.2], stack) == [24, -60]
    assert decode([0.3, -0.35], stack) == [0, 0]


def test_stack_preconditions(dual6, dual6_qahinv):
    with pytest.raises(StackError):
        DecoderStack(dual6_qahinv)  # det = -3
    with pytest.raises(StackError):
        DecoderStack(CodeChain(6, 2, 1, "dual", [(1, 2)], (1,)))
    with pytest.raises(StackError):
        DecoderStack(CodeChain(6, 2, 1, "primal", [(1, 2)], (1,)))


@pytest.mark.parametrize("chain", unimodular_stacks(), ids=lambda c: f"q{c.q}n{c.n}a{c.a}")
def test_round_trip(chain):
    st_ = DecoderStack(chain)
    lattice = construct_Dprime(chain)
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        m = st_.random_message(rng)
        x = encode(m, st_)
        assert member(x, lattice)
        comps = split_components(x, st_)
        q = chain.q
        assert [sum(q**i * c[j] for i, c in enumerate(comps)) for j in range(chain.n)] == x
        # the digit map: H_a x_i recovers u~_(a-i), H_a x_a recovers z
        Ha = np.array(st_.Ha, dtype=object)
        for i in range(chain.a):
            assert list(Ha.dot(comps[i])) == m.level_vector(chain.a - i, chain.n)
        assert tuple(Ha.dot(comps[-1])) == m.z
        assert decode(x, st_) == x


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_assemble_forms_agree(seed):
    chain = unimodular_stacks()[2]
    s = DecoderStack(chain)
    m = s.random_message(np.random.default_rng(seed), z_window=5)
    assemble_b(m, s.lm)   # raises if the two forms disagree


def test_message_json(stack):
    m = msg({(1, 2): 2}, (1, 0))
    assert MultistageMessage.from_json(m.to_json()) == m


def test_simulate(stack):
    r = simulate(stack, 0.0, 200, seed=3)
    assert r["errors"] == 0 and r["wer"] == 0
    assert simulate(stack, 0.5, 200, 3) == simulate(stack, 0.5, 200, 3)
    with pytest.raises(ValueError):
        simulate(stack, -1, 10, 0)
    with pytest.raises(ValueError):
        simulate(stack, 1, 0, 0)


def test_simulation_csv(stack):
    text = simulation_csv(stack, [0.0, 0.3], 50, 1)
    lines = text.splitlines()
    assert lines[0] == "sigma,trials,errors,wer,seed"
    assert lines[1] == "0,50,0,0,1"
    assert text == simulation_csv(stack, [0.0, 0.3], 50, 1)
