import json
from itertools import combinations

import pytest

from frogdyn import crowned as cr
from frogdyn.crowned import AGITATED, SETTLED, Crowned, CrownedError
from frogdyn.hatted import Hatted, count_f, enumerate_hatted, grid, hatted_poke
from frogdyn.verify import corner_counts
from oracles import all_hatted, clockwise_squares, crowned_ok


def H4(frogs, hats):
    return Hatted.from_squares(4, frogs, hats)


HOP1 = (H4([(1, 1), (1, 2), (1, 4), (2, 1), (2, 3), (2, 4)], [(1, 1), (1, 2), (2, 3), (2, 4)]), 2)
HOP3 = (H4([(1, 2), (1, 4), (2, 3), (2, 4)], [(1, 2), (2, 3), (2, 4)]), 4)
HOP5 = (H4([(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (2, 4)], [(1, 1), (2, 2), (2, 3), (2, 4)]), 2)
HOP6 = (H4([(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (2, 4)], [(1, 1), (1, 2), (2, 3), (2, 4)]), 3)


def rules(arr, col):
    return [rule for _, rule in cr.trace(cr.poke_crowned(arr, col))]


def as_sets(c: Crowned):
    g = grid(c.k)
    return (set(g.squares(c.F)), set(g.squares(c.H)), set(g.squares(c.A)), g.square(c.crown), c.x)


def test_validate_examples():
    arr = H4([(1, 2), (2, 3)], [(1, 2), (2, 3)])
    end = Crowned(4, arr.F, arr.H, 0, grid(4).index(1, 2), False)
    assert cr.validate_crowned(end, 2) == "ok"
    assert cr.validate_crowned(Crowned(4, arr.F, arr.H, 0, end.crown, True)) == "c"
    g = grid(4)
    two = Crowned(4, arr.F, arr.H, g.mask([(2, 2), (1, 4)]), g.index(2, 2), True)
    # (2,2) sits under a frog but the path back to the gap does not align
    assert cr.validate_crowned(two) == "d"
    g3 = grid(3)
    pair = Crowned(3, g3.mask([(1, 1)]), g3.mask([(1, 1)]), g3.mask([(1, 2), (1, 3)]), g3.index(1, 2), True)
    assert cr.validate_crowned(pair) == "f"
    assert not crowned_ok(3, 3, {(1, 1)}, {(1, 1)}, {(1, 2), (1, 3)}, (1, 2), AGITATED)
    assert cr.validate_crowned(Crowned(4, g.mask([(1, 1), (2, 1)]), g.mask([(1, 1), (2, 1)]), 0, 0, False)) == "a"
    assert cr.validate_crowned(end, 3) == "b"


def test_enumeration_matches_set_oracle():
    for k in (1, 2, 3):
        squares = clockwise_squares(k)
        for m in range(2 * k + 1):
            expected = set()
            for size in (0, 1, 2):
                if not 0 <= m - size <= 2 * k:
                    continue
                for F, H in all_hatted(k, m - size):
                    for A in combinations(squares, size):
                        A = set(A)
                        for crown in H | A:
                            for x in (AGITATED, SETTLED):
                                if crowned_ok(k, m, set(F), set(H), A, crown, x):
                                    expected.add((frozenset(F), frozenset(H), frozenset(A), crown, x))
            got = {(frozenset(F), frozenset(H), frozenset(A), crown, x)
                   for F, H, A, crown, x in map(as_sets, cr.enumerate_crowned(k, m))}
            assert got == expected


def test_enumeration_edge_cases():
    assert cr.enumerate_crowned(3, 0) == []
    listed = cr.enumerate_crowned(2, 3)
    assert listed == sorted(listed)


def test_poke_examples():
    g = grid(4)
    arr, col = HOP1
    c = cr.poke_crowned(arr, col)
    assert g.square(c.crown) == (1, 2) and c.agitated and g.squares(c.A) == [(1, 2)]
    arr, col = HOP3
    c = cr.poke_crowned(arr, col)
    assert g.squares(c.A) == [(1, 4), (2, 4)] and g.square(c.crown) == (2, 4)
    assert cr.is_start(c)
    assert cr.poke_crowned(arr, 1) is arr


def test_poke_lands_in_start_and_is_injective():
    for k in (1, 2, 3, 4):
        seen = {}
        for m in range(2 * k + 1):
            for arr in enumerate_hatted(k, m):
                for col in range(1, k + 1):
                    c = cr.poke_crowned(arr, col)
                    if isinstance(c, Hatted):
                        continue
                    assert cr.is_start(c) and cr.is_valid(c, m)
                    assert c not in seen
                    seen[c] = (arr, col)
                    assert cr.unpoke(c) == (arr, col)


def test_rule_sequences():
    assert rules(*HOP1) == ["cEH"]
    assert rules(*HOP3) == ["fE", "cH", "cEH"]
    assert rules(*HOP5) == ["fFH", "fEH", "cFH", "fFC", "cE"]
    assert rules(*HOP6) == ["fEH", "cFH", "fFH", "fFH", "fFC", "cE"]


def test_single_rule_states():
    arr, col = HOP1
    start = cr.poke_crowned(arr, col)
    end, rule = cr.step(start)
    g = grid(4)
    assert rule == "cEH" and g.square(end.crown) == (1, 3)
    assert (2, 3) not in g.squares(end.H) and (1, 3) in g.squares(end.H)
    assert cr.move_inverse(end) == start


def test_run_to_end_examples():
    arr, col = HOP1
    assert cr.run_to_end(cr.poke_crowned(arr, col))[1] == 1
    arr, col = HOP6
    assert cr.run_to_end(cr.poke_crowned(arr, col))[1] == 6
    end = cr.enthrone_all(arr)[0]
    assert cr.run_to_end(end) == (end, 0)


def test_crown_coupling_exhaustive():
    for k in (1, 2, 3, 4):
        for m in range(2 * k + 1):
            for arr in enumerate_hatted(k, m):
                for col in range(1, k + 1):
                    assert cr.crown_coupling_holds(arr, col)


def test_move_is_bijection_with_constructive_inverse():
    for k in (1, 2, 3):
        for m in range(2 * k + 1):
            states = cr.enumerate_crowned(k, m)
            members = set(states)
            image = {}
            for c in states:
                if cr.is_end(c):
                    continue
                d = cr.move(c)
                assert d in members and not cr.is_start(d) and cr.is_valid(d, m)
                assert d not in image
                image[d] = c
            assert set(image) == {d for d in states if not cr.is_start(d)}
            for d, c in image.items():
                assert cr.move_inverse(d) == c


def test_move_inverse_round_trip_k4():
    for m in range(9):
        for c in cr.enumerate_crowned(4, m):
            if not cr.is_end(c):
                assert cr.move_inverse(cr.move(c)) == c
            if not cr.is_start(c):
                assert cr.move(cr.move_inverse(c)) == c


def test_unique_start_decomposition():
    for k in (1, 2, 3):
        for m in range(2 * k + 1):
            states = cr.enumerate_crowned(k, m)
            hits = dict.fromkeys(states, 0)
            for s in states:
                if not cr.is_start(s):
                    continue
                c = s
                hits[c] += 1
                while not cr.is_end(c):
                    c = cr.move(c)
                    hits[c] += 1
            assert set(hits.values()) <= {1}


def test_rotation_commutes_with_move():
    for k in (1, 2, 3):
        for m in range(2 * k + 1):
            states = set(cr.enumerate_crowned(k, m))
            for c in states:
                assert cr.rot_crowned(c) in states
                if not cr.is_end(c):
                    assert cr.move(cr.rot_crowned(c)) == cr.rot_crowned(cr.move(c))


def test_start_and_end_have_equal_size():
    for k in (1, 2, 3):
        for m in range(2 * k + 1):
            states = cr.enumerate_crowned(k, m)
            hats = sum(a.H.bit_count() for a in enumerate_hatted(k, m))
            assert sum(map(cr.is_start, states)) == sum(map(cr.is_end, states)) == hats


def test_dethrone():
    arr = H4([(1, 2), (2, 3), (1, 1)], [(1, 2), (2, 3), (1, 1)])
    fiber = cr.enthrone_all(arr)
    assert len(fiber) == 3
    assert all(cr.dethrone(c) == arr for c in fiber)
    assert cr.enthrone_all(Hatted(4, 0, 0)) == []
    with pytest.raises(CrownedError):
        cr.dethrone(cr.poke_crowned(*HOP1))


def test_domain_errors():
    start = cr.poke_crowned(*HOP1)
    with pytest.raises(CrownedError):
        cr.move_inverse(start)
    end = cr.enthrone_all(HOP1[0])[0]
    with pytest.raises(CrownedError):
        cr.move(end)
    bad = Crowned(4, end.F, end.H, 0, end.crown, True)
    with pytest.raises(CrownedError) as info:
        cr.move(bad)
    assert info.value.clause == "c"


def test_full_grid_terminates():
    for k in (1, 2, 3, 4):
        for arr in enumerate_hatted(k, 2 * k):
            for col in range(1, k + 1):
                end, steps = cr.run_to_end(cr.poke_crowned(arr, col))
                assert steps == 2 * k and cr.dethrone(end) == hatted_poke(arr, col)[0]


def test_phi_example():
    arr = Hatted.from_squares(2, [(1, 1)], [(1, 1)])
    assert cr.phi_domain((1, 1), arr)
    assert cr.phi((1, 1), arr) == Hatted(2, 0, 0)
    assert cr.phi_inverse((1, 1), Hatted(2, 0, 0)) == arr


def test_phi_bijection():
    for k in (1, 2, 3):
        g = grid(k)
        for m in range(1, 2 * k + 1):
            for i in range(g.n):
                sq = g.square(i)
                domain = [a for a in enumerate_hatted(k, m) if cr.phi_domain(sq, a)]
                codomain = [b for b in enumerate_hatted(k, m - 1) if not b.F & g.colmask_of(i)]
                assert len(domain) == len(codomain)
                assert sorted(cr.phi(sq, a) for a in domain) == codomain
                assert all(cr.phi_inverse(sq, cr.phi(sq, a)) == a for a in domain)


def test_phi_preconditions():
    arr = Hatted.from_squares(2, [(1, 1), (2, 1)], [(1, 1)])
    with pytest.raises(CrownedError):
        cr.phi((2, 1), arr)
    with pytest.raises(CrownedError):
        cr.phi_inverse((1, 1), Hatted.from_squares(2, [(2, 1)], [(2, 1)]))


def test_speed_bijection():
    for k in (1, 2, 3):
        g = grid(k)
        for m in range(1, 2 * k + 1):
            omega = cr.omega(k, m)
            assert len(omega) == 2 * k * count_f(2 * k, m - 1)
            images = [cr.Phi(*t) for t in omega]
            assert len(set(images)) == len(omega)
            assert all(cr.Psi(*img) == t for t, img in zip(omega, images))
            for b in enumerate_hatted(k, m - 1):
                for i in range(g.n):
                    assert cr.Phi(*cr.Psi(b, g.square(i))) == (b, g.square(i))


def test_omega_size_k4():
    for m in range(1, 9):
        assert len(cr.omega(4, m)) == 8 * count_f(8, m - 1)


def test_Phi_rejects_non_hopper():
    arr, col = HOP1
    with pytest.raises(CrownedError):
        cr.Phi(arr, col, (2, 1))


def test_corner_slices():
    for k in (1, 2, 3, 4):
        for m in range(2 * k):
            left, right = corner_counts(k, m)
            assert left == right


def test_json_roundtrip():
    for c in cr.enumerate_crowned(2, 3):
        text = json.dumps(c.to_json())
        assert Crowned.from_json(text) == c
        assert json.loads(text)["x"] in (AGITATED, SETTLED)
