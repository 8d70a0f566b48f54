"""The m-blind-frog process: only the set of pads held by the m nastiest frogs."""
from __future__ import annotations

from typing import Iterable, Sequence

from .ring import Ring
from .words import InvalidInput

BlindArrangement = frozenset


def _check(ring: Ring, s: Iterable[int], a: int, sigma: int | None) -> frozenset:
    if a < 1 or (sigma is not None and a > sigma):
        raise InvalidInput(f"letter {a} outside the alphabet")
    s = frozenset(s)
    if any(not 0 <= p < ring.size for p in s):
        raise InvalidInput(f"pads {sorted(s)} outside 0..{ring.size - 1}")
    return s


def poked_runs(ring: Ring, s: frozenset, a: int) -> set[int]:
    """Pads of ``s`` reachable by a run of occupied pads starting at a pad labeled ``a``."""
    size = ring.size
    hit: set[int] = set()
    for y in ring.pads(a):
        x = y
        while x in s and x not in hit:
            hit.add(x)
            x = x + 1 if x + 1 < size else 0
    return hit


def blind_poke(ring: Ring, s: Iterable[int], a: int, sigma: int | None = None) -> tuple[frozenset, int]:
    """Every frog in a poked run hops one pad forward; returns (Sa, hop)."""
    s = _check(ring, s, a, sigma)
    runs = poked_runs(ring, s, a)
    if not runs:
        return s, 0
    size = ring.size
    moved = {(x + 1) % size for x in runs}
    return frozenset((s - runs) | moved), len(runs)


def blind_poke_naive(ring: Ring, s: Iterable[int], a: int, order: Sequence[int], sigma: int | None = None) -> tuple[frozenset, int]:
    """Step-by-step agitation where ``order`` ranks pads for hopping priority.

    Whenever several frogs are agitated, the one on the pad appearing first
    in ``order`` hops next. The outcome must not depend on ``order``.
    """
    s = _check(ring, s, a, sigma)
    size = ring.size
    if sorted(order) != list(range(size)):
        raise InvalidInput("order must be a permutation of the pads")
    rank = {p: r for r, p in enumerate(order)}
    calm = [p in s for p in range(size)]
    agitated = [0] * size
    for p in ring.pads(a):
        if calm[p]:
            calm[p] = False
            agitated[p] += 1
    hops = 0
    while True:
        waiting = [p for p in range(size) if agitated[p]]
        if not waiting:
            break
        p = min(waiting, key=rank.__getitem__)
        agitated[p] -= 1
        q = (p + 1) % size
        hops += 1
        if calm[q]:
            agitated[q] += 1
        calm[q] = True
    return frozenset(p for p in range(size) if calm[p]), hops


def blind_poke_word(ring: Ring, s: Iterable[int], r: Sequence[int], sigma: int | None = None) -> tuple[frozenset, int]:
    s = frozenset(s)
    total = 0
    for a in r:
        s, h = blind_poke(ring, s, a, sigma)
        total += h
    return s, total


def format_blind(s: Iterable[int]) -> list[int]:
    return sorted(s)
