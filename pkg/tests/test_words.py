"""Free-group word layer against a naive scan-and-cancel oracle."""

from hypothesis import given, strategies as st

from znfree import words as W

letters = st.integers(1, 3).flatmap(
    lambda k: st.sampled_from([k, -k]))
raw_words = st.lists(letters, max_size=12)


def oracle_reduce(seq):
    out = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def reduced(seq):
    return oracle_reduce(seq)


@given(raw_words, raw_words)
def test_mul_matches_oracle(a, b):
    ra, rb = reduced(a), reduced(b)
    assert W.w_mul(ra, rb) == oracle_reduce(list(ra) + list(rb))


@given(raw_words)
def test_inverse_cancels(a):
    ra = reduced(a)
    assert W.w_mul(ra, W.w_inv(ra)) == ()


@given(raw_words, raw_words, raw_words)
def test_associative(a, b, c):
    ra, rb, rc = reduced(a), reduced(b), reduced(c)
    assert W.w_mul(W.w_mul(ra, rb), rc) == W.w_mul(ra, W.w_mul(rb, rc))


@given(raw_words, raw_words)
def test_com_is_common_prefix(a, b):
    ra, rb = reduced(a), reduced(b)
    c = W.w_com(ra, rb)
    assert ra[:len(c)] == c and rb[:len(c)] == c
    if len(c) < len(ra) and len(c) < len(rb):
        assert ra[len(c)] != rb[len(c)]


@given(raw_words, st.integers(-4, 4))
def test_pow(a, k):
    ra = reduced(a)
    expect = ()
    step = ra if k >= 0 else W.w_inv(ra)
    for _ in range(abs(k)):
        expect = W.w_mul(expect, step)
    assert W.w_pow(ra, k) == expect


@given(raw_words)
def test_cyclic_decompose(a):
    ra = reduced(a)
    c, core = W.w_cyclic_decompose(ra)
    assert W.is_cyclically_reduced(core)
    assert W.w_mul(W.w_mul(W.w_inv(c), core), c) == ra


@given(raw_words)
def test_primitive_root(a):
    ra = reduced(a)
    if not W.is_cyclically_reduced(ra) or not ra:
        return
    root, k = W.w_primitive_root(ra)
    assert k >= 1
    assert W.w_pow(root, k) == ra


def test_conjugate_rotations():
    assert W.w_is_conjugate((1, 2), (2, 1))
    assert not W.w_is_conjugate((1, 2), (1, -2))
