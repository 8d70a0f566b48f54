import pytest
from hypothesis import given, settings, strategies as st

from frogdyn.ring import (
    Ring,
    dump_arrangement,
    identity_arrangement,
    load_arrangement,
    project_nastiest,
    ring_poke,
    ring_poke_word,
)
from frogdyn.rng import stream
from frogdyn.words import InvalidInput
from oracles import ring_poke_small_hops

# pads labeled b a a b a with a=1, b=2; frogs 1,5,2,4,3 sit on pads 0..4
RING5 = Ring((2, 1, 1, 2, 1))
FROGS5 = (0, 2, 4, 3, 1)


def test_five_pad_displacements():
    assert ring_poke(RING5, FROGS5, 1)[1] == (0, 1, 2, 1, 1)
    assert ring_poke(RING5, FROGS5, 2)[1] == (1, 0, 0, 2, 2)


def test_absent_letter_is_identity():
    assert ring_poke(RING5, FROGS5, 3) == (FROGS5, (0,) * 5)


def test_letter_validation():
    with pytest.raises(InvalidInput):
        ring_poke(RING5, FROGS5, 0)
    with pytest.raises(InvalidInput):
        ring_poke(RING5, FROGS5, 3, sigma=2)
    with pytest.raises(InvalidInput):
        ring_poke(RING5, (0, 0, 1, 2, 3), 1)


def test_empty_word():
    f = (3, 1, 0, 2, 4)
    assert ring_poke_word(RING5, f, ()) == (f, (0,) * 5)


def test_zigzag_two_pokes_hand_trace():
    ring = Ring((1, 2, 2, 1))
    f = (0, 1, 2, 3)
    f1, d1 = ring_poke(ring, f, 1)
    # pad 0 and pad 3 are poked: frog 1 leaps to pad 1, bumping frog 2, and so on
    assert f1 == (1, 2, 3, 0)
    assert d1 == (1, 1, 1, 1)
    f2, d2 = ring_poke_word(ring, f, (1, 2))
    assert d2[0] == 1 + ring_poke(ring, f1, 2)[1][0]


def test_word_concatenation_adds_displacements():
    rng = stream(5)
    for _ in range(100):
        size = int(rng.integers(1, 8))
        ring = Ring(tuple(int(x) for x in rng.integers(1, 4, size=size)))
        f = tuple(int(p) for p in rng.permutation(size))
        r1 = tuple(int(x) for x in rng.integers(1, 4, size=int(rng.integers(0, 6))))
        r2 = tuple(int(x) for x in rng.integers(1, 4, size=int(rng.integers(0, 6))))
        mid, d1 = ring_poke_word(ring, f, r1)
        end, d2 = ring_poke_word(ring, mid, r2)
        assert ring_poke_word(ring, f, r1 + r2) == (end, tuple(a + b for a, b in zip(d1, d2)))


@settings(max_examples=300)
@given(st.data())
def test_matches_small_hops_oracle(data):
    size = data.draw(st.integers(1, 8))
    labels = tuple(data.draw(st.lists(st.integers(1, 3), min_size=size, max_size=size)))
    f = tuple(data.draw(st.permutations(range(size))))
    a = data.draw(st.integers(1, 3))
    got = ring_poke(Ring(labels), f, a)
    assert got == ring_poke_small_hops(labels, f, a)
    assert sorted(got[0]) == list(range(size))
    # each frog leaps at most once, so at most ell leaps overall
    assert sum(1 for d in got[1] if d) <= size


def test_project_nastiest():
    assert project_nastiest(FROGS5, 2) == {0, 2}
    assert project_nastiest(FROGS5, 5) == set(range(5))
    assert project_nastiest(FROGS5, 1) == {0}
    with pytest.raises(InvalidInput):
        project_nastiest(FROGS5, 0)


def test_json_roundtrip():
    text = dump_arrangement(RING5, FROGS5)
    assert load_arrangement(text) == (RING5, FROGS5)
    assert identity_arrangement(RING5) == (0, 1, 2, 3, 4)
