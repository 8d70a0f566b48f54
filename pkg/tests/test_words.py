from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from frogdyn.rng import stream
from frogdyn.words import (
    Alphabet,
    InvalidInput,
    format_word,
    is_irreducible,
    lcs_length,
    lcs_length_bitparallel,
    parse_word,
    periodic_expand,
    sample_word,
    zigzag_word,
)
from oracles import lcs_recursive

ABBA = (1, 2, 2, 1)

words = st.lists(st.integers(1, 3), max_size=12).map(tuple)


def test_periodic_expand_examples():
    assert periodic_expand(ABBA, 7) == (1, 2, 2, 1, 1, 2, 2)
    assert periodic_expand(ABBA, 2) == (1, 2)
    assert periodic_expand(ABBA, 0) == ()


def test_periodic_expand_empty_base():
    with pytest.raises(InvalidInput):
        periodic_expand((), 3)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=6).map(tuple), st.integers(0, 5))
def test_periodic_expand_whole_powers(base, a):
    assert periodic_expand(base, a * len(base)) == base * a


def test_zigzag_word():
    assert zigzag_word(2) == (1, 2, 2, 1)
    assert zigzag_word(3) == (1, 2, 3, 3, 2, 1)
    assert zigzag_word(1) == (1, 1)
    with pytest.raises(InvalidInput):
        zigzag_word(0)


def test_is_irreducible():
    assert is_irreducible((1, 2, 2, 1))
    assert not is_irreducible((1, 2, 1, 2))
    assert is_irreducible((1,))
    for k in range(1, 9):
        assert is_irreducible(zigzag_word(k)) == (k > 1)


def test_zigzag_k1_is_a_power():
    # 11 = (1)(1); the irreducibility hypothesis needs k >= 2
    assert not is_irreducible(zigzag_word(1))


def test_lcs_examples():
    assert lcs_length((1, 2, 2, 1), (1, 2, 2, 1)) == 4
    assert lcs_length((1, 2), (2, 1)) == 1
    a, b = 1, 2
    assert lcs_length((a, b, b, a, a, b, b), (a, b, a, b, a, b)) == 5


def test_lcs_matches_recursive_oracle_exhaustively():
    pool = [w for n in range(0, 5) for w in product((1, 2, 3), repeat=n)]
    rng = stream(3, 0)
    for _ in range(3000):
        u = pool[rng.integers(len(pool))]
        v = pool[rng.integers(len(pool))]
        assert lcs_length(u, v) == lcs_recursive(u, v)


def test_lcs_exhaustive_binary_length_8():
    ws = list(product((1, 2), repeat=8))
    ref = ws[37]
    for w in ws:
        assert lcs_length(ref, w) == lcs_recursive(ref, w)


@given(words, words)
def test_lcs_symmetric_and_bitparallel(u, v):
    d = lcs_length(u, v)
    assert d == lcs_length(v, u)
    assert d == lcs_length_bitparallel(u, v) == lcs_length_bitparallel(v, u)


@given(words, words, st.integers(1, 3))
def test_lcs_monotone(u, v, x):
    d = lcs_length(u, v)
    assert d <= lcs_length(u + (x,), v) <= d + 1
    assert lcs_length(u, u) == len(u)


def test_sample_word():
    assert sample_word(Alphabet(1), 5, stream(0)) == (1,) * 5
    assert sample_word(2, 0, stream(0)) == ()
    assert sample_word(3, 50, stream(9, 4)) == sample_word(3, 50, stream(9, 4))


def test_sample_word_balanced():
    n = 10**6
    letters = np.array(sample_word(2, n, stream(11)))
    ones = int((letters == 1).sum())
    assert abs(ones - n / 2) <= 4 * np.sqrt(n / 4)


def test_word_format_roundtrip():
    w = (1, 12, 3)
    assert format_word(w) == "1,12,3"
    assert parse_word(" 1, 12,3 ") == w
    assert parse_word("") == ()
    with pytest.raises(InvalidInput):
        parse_word("1,a")


def test_alphabet():
    alpha = Alphabet(3)
    assert 3 in alpha and 4 not in alpha and 0 not in alpha
    with pytest.raises(InvalidInput):
        alpha.check((1, 4))
    with pytest.raises(InvalidInput):
        Alphabet(0)
