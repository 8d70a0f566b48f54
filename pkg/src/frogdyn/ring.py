"""The full frog process on a ring of labeled lily pads.

Frogs are ranked by nastiness: frog 1 is the nastiest. Pads are 0-based and
pad ``i`` carries letter ``labels[i]``. An arrangement is stored as ``pad_of``
where ``pad_of[m - 1]`` is the pad of frog ``m``.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Sequence

from .words import InvalidInput, Word

Arrangement = tuple[int, ...]
Displacement = tuple[int, ...]


@dataclass(frozen=True)
class Ring:
    labels: Word
    pads_by_letter: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        if not labels:
            raise InvalidInput("a ring needs at least one pad")
        if min(labels) < 1:
            raise InvalidInput("letters are positive integers")
        object.__setattr__(self, "labels", labels)
        index: dict[int, tuple[int, ...]] = {}
        for pad, letter in enumerate(labels):
            index[letter] = index.get(letter, ()) + (pad,)
        object.__setattr__(self, "pads_by_letter", index)

    @property
    def size(self) -> int:
        return len(self.labels)

    def pads(self, letter: int) -> tuple[int, ...]:
        return self.pads_by_letter.get(letter, ())


def check_arrangement(ring: Ring, f: Sequence[int]) -> None:
    if len(f) != ring.size or sorted(f) != list(range(ring.size)):
        raise InvalidInput(f"{tuple(f)} is not a bijection onto the {ring.size} pads")


def identity_arrangement(ring: Ring) -> Arrangement:
    return tuple(range(ring.size))


def _check_letter(a: int, sigma: int | None) -> None:
    if a < 1 or (sigma is not None and a > sigma):
        raise InvalidInput(f"letter {a} outside the alphabet")


def ring_poke(ring: Ring, f: Sequence[int], a: int, sigma: int | None = None) -> tuple[Arrangement, Displacement]:
    """Poke every pad labeled ``a`` and let the frenzy settle.

    Agitated frogs leap nastiest first, each to the nearest clockwise pad
    that is empty or holds a less nasty frog; that occupant becomes agitated.
    Returns the new arrangement and the per-frog displacement.
    """
    _check_letter(a, sigma)
    check_arrangement(ring, f)
    pos = list(f)
    occ = [0] * ring.size
    for i, p in enumerate(pos):
        occ[p] = i
    disp = [0] * ring.size
    _poke_inplace(ring.pads(a), ring.size, pos, occ, disp)
    return tuple(pos), tuple(disp)


def _poke_inplace(poked: Sequence[int], size: int, pos: list, occ: list, disp: list) -> None:
    # occ[p] is the frog sitting on pad p (0-based nastiness) or -1 when empty;
    # an agitated frog keeps its pad until it leaps or something lands on it.
    if not poked:
        return
    heap = [occ[p] for p in poked if occ[p] >= 0]
    if not heap:
        return
    agitated = set(heap)
    heapq.heapify(heap)
    while heap:
        i = heapq.heappop(heap)
        p = pos[i]
        if occ[p] == i:
            occ[p] = -1
        q = p
        steps = 0
        while True:
            q += 1
            if q == size:
                q = 0
            steps += 1
            j = occ[q]
            if j < 0 or j > i:
                break
        occ[q] = i
        pos[i] = q
        disp[i] += steps
        if j >= 0 and j not in agitated:
            agitated.add(j)
            heapq.heappush(heap, j)


def ring_poke_word(ring: Ring, f: Sequence[int], r: Sequence[int], sigma: int | None = None) -> tuple[Arrangement, Displacement]:
    """Poke the letters of ``r`` left to right, accumulating displacements."""
    check_arrangement(ring, f)
    for a in r:
        _check_letter(a, sigma)
    pos = list(f)
    occ = [0] * ring.size
    for i, p in enumerate(pos):
        occ[p] = i
    disp = [0] * ring.size
    for a in r:
        _poke_inplace(ring.pads(a), ring.size, pos, occ, disp)
    return tuple(pos), tuple(disp)


def project_nastiest(f: Sequence[int], m: int) -> frozenset[int]:
    """Pads held by frogs 1..m."""
    if not 1 <= m <= len(f):
        raise InvalidInput(f"m={m} outside 1..{len(f)}")
    return frozenset(f[:m])


def dump_arrangement(ring: Ring, f: Sequence[int]) -> str:
    return json.dumps({"labels": list(ring.labels), "pad_of": list(f)})


def load_arrangement(text: str) -> tuple[Ring, Arrangement]:
    data = json.loads(text)
    ring = Ring(tuple(data["labels"]))
    f = tuple(data["pad_of"])
    check_arrangement(ring, f)
    return ring, f
