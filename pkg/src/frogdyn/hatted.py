"""Hatted frogs on the 2 x k grid.

Square ``(r, c)`` is stored as bit ``(r - 1) * k + (c - 1)`` of an occupancy
mask. Clockwise order runs along the top row left to right, then along the
bottom row right to left, which is the ring of ``1 2 ... k k ... 2 1`` folded
in half: ring pad ``i`` sits on ``(1, i + 1)`` for ``i < k`` and on
``(2, 2k - i)`` otherwise.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from .words import InvalidInput

Square = tuple[int, int]


class Grid:
    """Index tables for the clockwise geometry of [2] x [k]."""

    def __init__(self, k: int):
        if k < 1:
            raise InvalidInput(f"k must be >= 1, got {k}")
        self.k = k
        self.n = 2 * k
        self.full = (1 << self.n) - 1
        # clockwise ring position -> bit index
        self.ring = [i for i in range(k)] + [k + (k - 1 - j) for j in range(k)]
        self.ring_pos = [0] * self.n
        for p, i in enumerate(self.ring):
            self.ring_pos[i] = p
        self.succ = [self.ring[(self.ring_pos[i] + 1) % self.n] for i in range(self.n)]
        self.pred = [self.ring[(self.ring_pos[i] - 1) % self.n] for i in range(self.n)]
        self.opp = [(i + k) % self.n for i in range(self.n)]
        self.rot = [self.index(3 - r, k + 1 - c) for r, c in map(self.square, range(self.n))]
        self.col = [i % k + 1 for i in range(self.n)]
        self.colmask = [0] + [(1 << (c - 1)) | (1 << (k + c - 1)) for c in range(1, k + 1)]

    def index(self, r: int, c: int) -> int:
        if r not in (1, 2) or not 1 <= c <= self.k:
            raise InvalidInput(f"square {(r, c)} outside [2] x [{self.k}]")
        return (r - 1) * self.k + (c - 1)

    def square(self, i: int) -> Square:
        return (i // self.k + 1, i % self.k + 1)

    def mask(self, squares: Iterable[Square]) -> int:
        out = 0
        for r, c in squares:
            out |= 1 << self.index(r, c)
        return out

    def squares(self, mask: int) -> list[Square]:
        return [self.square(i) for i in range(self.n) if mask >> i & 1]

    def rot_mask(self, mask: int) -> int:
        out = 0
        for i in range(self.n):
            if mask >> i & 1:
                out |= 1 << self.rot[i]
        return out

    def colmask_of(self, i: int) -> int:
        return self.colmask[self.col[i]]

    def path(self, a: int, b: int) -> list[int]:
        """I[a, b]: clockwise walk from ``a`` to ``b`` inclusive."""
        out = [a]
        while out[-1] != b:
            out.append(self.succ[out[-1]])
        return out

    def path_open(self, a: int, b: int) -> list[int]:
        """I(a, b] = I[a+, b]; the whole ring when ``a == b``."""
        return self.path(self.succ[a], b)

    def eb(self, F: int, i: int) -> int:
        """First square preceding ``i`` that is not in ``F`` (``i`` itself if none or ``i`` not in F)."""
        if not F >> i & 1 or F == self.full:
            return i
        j = self.pred[i]
        while F >> j & 1:
            j = self.pred[j]
        return j

    def aligns(self, F: int, H: int, path: Sequence[int]) -> bool:
        seen_cols = 0
        # walk backwards so "column recurs later" is a running set
        for i in reversed(path):
            if not F >> i & 1:
                return False
            later = seen_cols & self.colmask_of(i)
            if bool(H >> i & 1) == bool(later):
                return False
            seen_cols |= 1 << i
        return True

    def ring_to_mask(self, pads: Iterable[int]) -> int:
        out = 0
        for p in pads:
            out |= 1 << self.ring[p]
        return out

    def mask_to_ring(self, mask: int) -> frozenset[int]:
        return frozenset(self.ring_pos[i] for i in range(self.n) if mask >> i & 1)


@lru_cache(maxsize=None)
def grid(k: int) -> Grid:
    return Grid(k)


def pad_to_square(i: int, k: int) -> Square:
    if not 0 <= i < 2 * k:
        raise InvalidInput(f"pad {i} outside 0..{2 * k - 1}")
    return (1, i + 1) if i < k else (2, 2 * k - i)


def square_to_pad(sq: Square, k: int) -> int:
    r, c = sq
    grid(k).index(r, c)
    return c - 1 if r == 1 else 2 * k - c


@dataclass(frozen=True)
class SquareNav:
    succ: Square
    pred: Square
    opp: Square
    column: int
    rot: Square


def square_nav(sq: Square, k: int) -> SquareNav:
    g = grid(k)
    i = g.index(*sq)
    return SquareNav(g.square(g.succ[i]), g.square(g.pred[i]), g.square(g.opp[i]), g.col[i], g.square(g.rot[i]))


def clockwise_path(a: Square, b: Square, k: int, half_open: bool = False) -> list[Square]:
    g = grid(k)
    ia, ib = g.index(*a), g.index(*b)
    idx = g.path_open(ia, ib) if half_open else g.path(ia, ib)
    return [g.square(i) for i in idx]


def eb(F: Iterable[Square], sq: Square, k: int) -> Square:
    g = grid(k)
    return g.square(g.eb(g.mask(F), g.index(*sq)))


def aligns(arr: "Hatted", path: Sequence[Square]) -> bool:
    g = grid(arr.k)
    return g.aligns(arr.F, arr.H, [g.index(*sq) for sq in path])


def is_hatted(k: int, F: int, H: int) -> bool:
    """The two hat rules: one hat per occupied column, no (2,c) hat beside a (1,c+1) hat."""
    if H & ~F:
        return False
    for c in range(1, k + 1):
        top, bot = 1 << (c - 1), 1 << (k + c - 1)
        occupied = F & (top | bot)
        hats = H & (top | bot)
        if occupied and hats not in (top, bot):
            return False
        if not occupied and hats:
            return False
        if c < k and H & bot and H & (top << 1):
            return False
    return True


@dataclass(frozen=True, order=True)
class Hatted:
    """Hatted-frog arrangement: occupancy mask ``F`` and hat mask ``H``."""

    k: int
    F: int
    H: int

    @property
    def m(self) -> int:
        return self.F.bit_count()

    def is_valid(self) -> bool:
        return is_hatted(self.k, self.F, self.H)

    def frogs(self) -> list[Square]:
        return grid(self.k).squares(self.F)

    def hats(self) -> list[Square]:
        return grid(self.k).squares(self.H)

    def to_json(self) -> dict:
        return {"k": self.k, "F": [list(s) for s in self.frogs()], "H": [list(s) for s in self.hats()]}

    @classmethod
    def from_squares(cls, k: int, F: Iterable[Square], H: Iterable[Square]) -> "Hatted":
        g = grid(k)
        arr = cls(k, g.mask(map(tuple, F)), g.mask(map(tuple, H)))
        if not arr.is_valid():
            raise InvalidInput(f"not a hatted-frog arrangement: {arr.to_json()}")
        return arr

    @classmethod
    def from_json(cls, data: dict | str) -> "Hatted":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_squares(data["k"], data["F"], data["H"])


# per-column states: (top occupied, bottom occupied, hat on top?)
_COLUMN_STATES = ((0, 0, None), (1, 0, True), (0, 1, False), (1, 1, True), (1, 1, False))


def _iter_hatted(k: int) -> Iterator[tuple[int, int]]:
    # depth-first over columns; the only cross-column rule couples c and c+1
    def rec(c: int, F: int, H: int, prev_bottom_hat: bool):
        if c > k:
            yield F, H
            return
        top, bot = 1 << (c - 1), 1 << (k + c - 1)
        for t, b, hat_top in _COLUMN_STATES:
            if hat_top and prev_bottom_hat:
                continue
            f = F | (top if t else 0) | (bot if b else 0)
            h = H
            if hat_top is True:
                h |= top
            elif hat_top is False:
                h |= bot
            yield from rec(c + 1, f, h, hat_top is False)

    yield from rec(1, 0, 0, False)


@lru_cache(maxsize=None)
def _hatted_by_size(k: int) -> dict[int, tuple[Hatted, ...]]:
    buckets: dict[int, list[Hatted]] = {m: [] for m in range(2 * k + 1)}
    for F, H in _iter_hatted(k):
        buckets[F.bit_count()].append(Hatted(k, F, H))
    return {m: tuple(sorted(v)) for m, v in buckets.items()}


def enumerate_hatted(k: int, m: int) -> tuple[Hatted, ...]:
    """All m-hatted-frog arrangements on [2] x [k], sorted by (F, H)."""
    if k < 1:
        raise InvalidInput(f"k must be >= 1, got {k}")
    if not 0 <= m <= 2 * k:
        raise InvalidInput(f"m={m} outside 0..{2 * k}")
    return _hatted_by_size(k)[m]


def count_f_closed(n: int, m: int) -> int:
    """sum_i C(n - 2i, m - 2i)."""
    if not 0 <= m <= n:
        raise InvalidInput(f"need 0 <= m <= n, got n={n}, m={m}")
    return sum(comb(n - 2 * i, m - 2 * i) for i in range(m // 2 + 1))


@lru_cache(maxsize=None)
def count_f(n: int, m: int) -> int:
    """f(n, m) via f(n,m) = f(n-1,m) + f(n-1,m-1), f(n,0) = 1, f(n,n) = floor(n/2) + 1."""
    if not 0 <= m <= n:
        raise InvalidInput(f"need 0 <= m <= n, got n={n}, m={m}")
    if m == 0:
        return 1
    if m == n:
        return n // 2 + 1
    return count_f(n - 1, m) + count_f(n - 1, m - 1)


def count_hatted(k: int, m: int) -> int:
    if not 0 <= m <= 2 * k:
        raise InvalidInput(f"m={m} outside 0..{2 * k}")
    return count_f_closed(2 * k, m)


def hatted_poke(arr: Hatted, a: int, sigma: int | None = None) -> tuple[Hatted, int]:
    """Poke column ``a``; returns the settled arrangement and the number of hops.

    Letters outside [k] and empty columns leave the arrangement alone. Of two
    agitated frogs the unhatted one hops first; a displaced frog hops
    immediately after being displaced.
    """
    if a < 1 or (sigma is not None and a > sigma):
        raise InvalidInput(f"letter {a} outside the alphabet")
    k = arr.k
    if a > k:
        return arr, 0
    g = grid(k)
    colm = g.colmask[a]
    A = arr.F & colm
    if not A:
        return arr, 0
    F = arr.F & ~colm
    H = arr.H & ~colm
    hatted_one = (arr.H & colm).bit_length() - 1
    stack = [hatted_one]
    unhatted = A & ~arr.H
    if unhatted:
        stack.append(unhatted.bit_length() - 1)
    hops = 0
    while stack:
        s = stack.pop()
        t = g.succ[s]
        hops += 1
        displaced = F >> t & 1
        F |= 1 << t
        H = (H & ~(1 << g.opp[t])) | (1 << t)
        if displaced:
            stack.append(t)
    return Hatted(k, F, H), hops


def doff(arr: Hatted) -> int:
    """Forget the hats: the occupancy mask F."""
    return arr.F


def fiber_count(k: int, F: int) -> int:
    """Number of hat placements H making (F, H) a hatted-frog arrangement."""
    count = 0

    def rec(c: int, prev_bottom_hat: bool):
        nonlocal count
        if c > k:
            count += 1
            return
        top = F >> (c - 1) & 1
        bot = F >> (k + c - 1) & 1
        if not (top or bot):
            rec(c + 1, False)
            return
        if top and not prev_bottom_hat:
            rec(c + 1, False)
        if bot:
            rec(c + 1, True)

    rec(1, False)
    return count


def hop_set(arr: Hatted, c: int) -> int:
    """Mask of frogs that hop when column ``c`` is poked."""
    k = arr.k
    if not 1 <= c <= k:
        raise InvalidInput(f"column {c} outside 1..{k}")
    g = grid(k)
    out = 0
    for start in (g.index(1, c), g.index(2, c)):
        i = start
        steps = 0
        while arr.F >> i & 1 and steps < g.n:
            out |= 1 << i
            i = g.succ[i]
            steps += 1
    return out


def rot_hatted(arr: Hatted) -> Hatted:
    g = grid(arr.k)
    return Hatted(arr.k, g.rot_mask(arr.F), g.rot_mask(arr.H))


def counting_table(k: int) -> list[tuple[int, int, int]]:
    """Rows (n, m, f(n, m)) for n = 2k."""
    n = 2 * k
    return [(n, m, count_f(n, m)) for m in range(n + 1)]
