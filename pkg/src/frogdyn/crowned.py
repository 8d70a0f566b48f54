"""Crowned-frog arrangements: hatted arrangements caught mid-poke.

A crowned arrangement ``(F, H, A, crown, x)`` records the calm frogs ``F``,
their hats ``H``, the agitated frogs ``A``, one distinguished crowned frog and
whether that frog is agitated. ``move`` performs a single hop and is a
bijection from non-ending to non-starting arrangements, which is what makes
the hatted state graph regular.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .hatted import Grid, Hatted, Square, grid, hatted_poke, hop_set, is_hatted
from .words import InvalidInput

AGITATED = "agitated"
SETTLED = "settled"

CLAUSES = ("a", "b", "c", "d", "e", "f", "g")


class CrownedError(InvalidInput):
    """Domain error; ``clause`` names the failing validity clause when there is one."""

    def __init__(self, message: str, clause: str | None = None):
        super().__init__(message)
        self.clause = clause


@dataclass(frozen=True, order=True)
class Crowned:
    k: int
    F: int
    H: int
    A: int
    crown: int
    agitated: bool

    @property
    def m(self) -> int:
        return self.F.bit_count() + self.A.bit_count()

    @property
    def x(self) -> str:
        return AGITATED if self.agitated else SETTLED

    def to_json(self) -> dict:
        g = grid(self.k)
        return {
            "k": self.k,
            "F": [list(s) for s in g.squares(self.F)],
            "H": [list(s) for s in g.squares(self.H)],
            "A": [list(s) for s in g.squares(self.A)],
            "crown": list(g.square(self.crown)),
            "x": self.x,
        }

    @classmethod
    def from_squares(cls, k: int, F, H, A, crown: Square, x: str) -> "Crowned":
        if x not in (AGITATED, SETTLED):
            raise InvalidInput(f"x must be {AGITATED!r} or {SETTLED!r}, got {x!r}")
        g = grid(k)
        return cls(k, g.mask(map(tuple, F)), g.mask(map(tuple, H)), g.mask(map(tuple, A)),
                   g.index(*crown), x == AGITATED)

    @classmethod
    def from_json(cls, data: dict | str) -> "Crowned":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_squares(data["k"], data["F"], data["H"], data["A"], tuple(data["crown"]), data["x"])


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _columns_full(g: Grid, F: int, path) -> bool:
    return all(F & g.colmask_of(i) == g.colmask_of(i) for i in path)


def validate_crowned(c: Crowned, m: int | None = None) -> str:
    """``"ok"`` or the letter of the first violated clause."""
    k, F, H, A, crown = c.k, c.F, c.H, c.A, c.crown
    g = grid(k)
    if not 0 <= crown < g.n or (F | H | A) >> g.n:
        return "a"
    if not is_hatted(k, F, H):
        return "a"
    if A.bit_count() > 2 or (m is not None and F.bit_count() + A.bit_count() != m):
        return "b"
    cbit = 1 << crown
    if not (H | A) & cbit:
        return "c"
    if c.agitated and not A & cbit:
        return "c"
    if not c.agitated and not H & cbit:
        return "c"
    agitated = _bits(A)
    for f in agitated:
        if F & g.colmask_of(f) and not g.aligns(F, H, g.path_open(g.eb(F, f), f)):
            return "d"
    if len(agitated) == 1 and not c.agitated:
        f = agitated[0]
        if H >> g.succ[f] & 1 or not _columns_full(g, F, g.path(crown, f)):
            return "e"
    if len(agitated) == 2:
        if F & g.colmask_of(crown):
            return "f"
        if A & cbit:
            f = A & ~cbit
            f = f.bit_length() - 1
            o = g.opp[crown]
            if H >> g.succ[f] & 1 or not _columns_full(g, F, g.path(o, f)[1:]):
                return "f"
    if c.agitated:
        t = g.succ[crown]
        if g.eb(F, crown) == g.opp[t] and F & g.colmask_of(t):
            return "g"
    return "ok"


def is_valid(c: Crowned, m: int | None = None) -> bool:
    return validate_crowned(c, m) == "ok"


def is_end(c: Crowned) -> bool:
    return c.A == 0 and not c.agitated


def is_start(c: Crowned) -> bool:
    if not c.agitated:
        return False
    g = grid(c.k)
    col = g.colmask_of(c.crown)
    if c.A & ~col or c.F & col:
        return False
    return is_hatted(c.k, c.F | c.A, c.H | (1 << c.crown))


def _require(c: Crowned) -> None:
    verdict = validate_crowned(c)
    if verdict != "ok":
        raise CrownedError(f"invalid crowned arrangement (clause {verdict}): {c.to_json()}", verdict)


def poke_crowned(arr: Hatted, c: int) -> Crowned | Hatted:
    """Agitate column ``c``; the hatted frog there takes the crown."""
    k = arr.k
    if not 1 <= c <= k:
        raise InvalidInput(f"column {c} outside 1..{k}")
    g = grid(k)
    col = g.colmask[c]
    A = arr.F & col
    if not A:
        return arr
    crown = (arr.H & col).bit_length() - 1
    return Crowned(k, arr.F & ~col, arr.H & ~col, A, crown, True)


def unpoke(c: Crowned) -> tuple[Hatted, int]:
    """Inverse of ``poke_crowned`` on starting arrangements."""
    if not is_start(c):
        raise CrownedError("not a starting arrangement")
    g = grid(c.k)
    return Hatted(c.k, c.F | c.A, c.H | (1 << c.crown)), g.col[c.crown]


def step(c: Crowned, check: bool = True) -> tuple[Crowned, str]:
    """One hop; returns the new arrangement and the name of the rule used."""
    if check:
        _require(c)
    if is_end(c):
        raise CrownedError("ending arrangements have no successor")
    g = grid(c.k)
    k, F, H, A, crown = c.k, c.F, c.H, c.A, c.crown
    cbit = 1 << crown
    if A == cbit and c.agitated:
        t = g.succ[crown]
        tb = 1 << t
        if not F & g.colmask_of(t):
            return Crowned(k, F | tb, H | tb, 0, t, False), "cE"
        if not F & tb:
            return Crowned(k, F | tb, (H & ~(1 << g.opp[t])) | tb, 0, t, False), "cEH"
        if H & tb:
            return Crowned(k, F, H, tb, t, True), "cH"
        return Crowned(k, F, (H & ~(1 << g.opp[t])) | tb, tb, t, False), "cFH"
    # one non-crown agitated frog, or a single agitated frog with x settled
    f = A & ~cbit if A.bit_count() == 2 else A
    fi = f.bit_length() - 1
    t = g.succ[fi]
    tb = 1 << t
    rest = A & ~f
    if not F & g.colmask_of(t):
        return Crowned(k, F | tb, H | tb, rest, crown, c.agitated), "fE"
    hats = (H & ~(1 << g.opp[t])) | tb
    if not F & tb:
        return Crowned(k, F | tb, hats, rest, crown, c.agitated), "fEH"
    if H & tb:
        raise CrownedError("no rule applies: successor of the agitated frog wears a hat")
    if crown != g.opp[t]:
        return Crowned(k, F, hats, rest | tb, crown, c.agitated), "fFH"
    return Crowned(k, F, hats, tb, t, True), "fFC"


def move(c: Crowned, check: bool = True) -> Crowned:
    return step(c, check)[0]


def rot_crowned(c: Crowned) -> Crowned:
    g = grid(c.k)
    return Crowned(c.k, g.rot_mask(c.F), g.rot_mask(c.H), g.rot_mask(c.A), g.rot[c.crown], c.agitated)


def _top_row(g: Grid, i: int) -> bool:
    return i < g.k


def move_inverse(c: Crowned, check: bool = True) -> Crowned:
    """The unique predecessor under ``move``, built case by case."""
    if check:
        _require(c)
    if is_start(c):
        raise CrownedError("starting arrangements have no predecessor")
    g = grid(c.k)
    k, F, H, A, crown = c.k, c.F, c.H, c.A, c.crown
    cbit = 1 << crown
    n_agitated = A.bit_count()

    def swap_hat(mask: int, i: int) -> int:
        return (mask & ~(1 << i)) | (1 << g.opp[i])

    if n_agitated == 2:
        f = (A & ~cbit).bit_length() - 1
        f1 = g.pred[f]
        return Crowned(k, F, swap_hat(H, f), cbit | (1 << f1), crown, c.agitated)
    if n_agitated == 1 and not c.agitated:
        a = A.bit_length() - 1
        f1 = g.pred[a]
        if crown == a:
            return Crowned(k, F, swap_hat(H, a), 1 << f1, f1, True)
        return Crowned(k, F, swap_hat(H, a), 1 << f1, crown, False)
    if n_agitated == 1 and not F & g.colmask_of(crown):
        if not _top_row(g, crown):
            return rot_crowned(move_inverse(rot_crowned(c), check=False))
        col = g.col[crown]
        t = col
        while t >= 1:
            top_missing = not (F | cbit) >> g.index(1, t) & 1
            left_unhatted = t == 1 or not H >> g.index(2, t - 1) & 1
            if top_missing or left_unhatted:
                break
            t -= 1
        landed = g.index(2, t)
        f1 = g.pred[landed]
        H1 = H & ~(1 << landed)
        if F >> g.opp[landed] & 1:
            H1 |= 1 << g.opp[landed]
        return Crowned(k, F & ~(1 << landed), H1, cbit | (1 << f1), crown, True)
    if n_agitated == 1:
        f1 = g.pred[crown]
        e = g.eb(F, crown)
        if e == g.opp[crown]:
            return Crowned(k, F & ~cbit, H & ~cbit, cbit | (1 << f1), crown, True)
        if not _top_row(g, crown):
            return rot_crowned(move_inverse(rot_crowned(c), check=False))
        if g.col[e] < g.col[crown]:
            return Crowned(k, F, H, 1 << f1, f1, True)
        return Crowned(k, F, swap_hat(H, crown), 1 << f1, g.opp[crown], False)
    # no agitated frogs: the last hop landed somewhere and settled
    if not _top_row(g, crown):
        return rot_crowned(move_inverse(rot_crowned(c), check=False))
    if F == g.full:
        top_hats = sum(1 for j in range(1, k + 1) if H >> g.index(1, j) & 1)
        landed = g.index(1, top_hats)
    else:
        f = g.col[crown]
        while f <= k:
            if not F >> g.index(2, f) & 1 or not H >> g.succ[g.index(1, f)] & 1:
                break
            f += 1
        if f > k:
            raise CrownedError("no predecessor found; arrangement violates the crowned clauses")
        landed = g.index(1, f)
    f1 = g.pred[landed]
    lb = 1 << landed
    H1 = H & ~lb
    if F >> g.opp[landed] & 1:
        H1 |= 1 << g.opp[landed]
    if crown == landed:
        return Crowned(k, F & ~lb, H1, 1 << f1, f1, True)
    return Crowned(k, F & ~lb, H1, 1 << f1, crown, False)


def dethrone(c: Crowned) -> Hatted:
    if not is_end(c):
        raise CrownedError("only ending arrangements can be dethroned")
    return Hatted(c.k, c.F, c.H)


def enthrone_all(arr: Hatted) -> list[Crowned]:
    """Every ending arrangement lying over ``arr``: one per hatted frog."""
    return [Crowned(arr.k, arr.F, arr.H, 0, i, False) for i in _bits(arr.H)]


def run_to_end(c: Crowned, check: bool = True) -> tuple[Crowned, int]:
    if check:
        _require(c)
    steps = 0
    cap = 2 * c.k + 1
    while not is_end(c):
        if steps > cap:
            raise CrownedError("move failed to reach an ending arrangement")
        c = move(c, check=False)
        steps += 1
    return c, steps


def trace(c: Crowned) -> list[tuple[Crowned, str]]:
    """The sequence of (arrangement, rule) pairs produced by repeated moves."""
    out = []
    while not is_end(c):
        c, rule = step(c, check=False)
        out.append((c, rule))
    return out


def _iter_crowned(k: int, m: int) -> Iterator[Crowned]:
    from .hatted import enumerate_hatted

    g = grid(k)
    squares = range(g.n)
    for size in (0, 1, 2):
        if not 0 <= m - size <= g.n:
            continue
        subsets = [sum(1 << i for i in combo) for combo in combinations(squares, size)]
        for arr in enumerate_hatted(k, m - size):
            for A in subsets:
                for crown in _bits(arr.H | A):
                    for agitated in (False, True):
                        c = Crowned(k, arr.F, arr.H, A, crown, agitated)
                        if validate_crowned(c, m) == "ok":
                            yield c


def enumerate_crowned(k: int, m: int) -> list[Crowned]:
    """All m-crowned arrangements, found by filtering candidates through the clauses."""
    if k < 1 or not 0 <= m <= 2 * k:
        raise InvalidInput(f"need k >= 1 and 0 <= m <= 2k, got k={k}, m={m}")
    return sorted(_iter_crowned(k, m))


def phi_domain(sq: Square, arr: Hatted) -> bool:
    g = grid(arr.k)
    i = g.index(*sq)
    if not arr.H >> i & 1:
        return False
    return not all(arr.F >> j & 1 for j in g.path(g.opp[i], i))


def phi(sq: Square, arr: Hatted) -> Hatted:
    """Poke the column of ``sq`` and stop as soon as a single frog is agitated."""
    if not phi_domain(sq, arr):
        raise CrownedError(f"{sq} is not a hatted square with an open path to it")
    g = grid(arr.k)
    c = poke_crowned(arr, g.col[g.index(*sq)])
    while c.A.bit_count() != 1:
        c = move(c, check=False)
    return Hatted(arr.k, c.F, c.H)


def phi_inverse(sq: Square, arr: Hatted) -> Hatted:
    g = grid(arr.k)
    i = g.index(*sq)
    if arr.F & g.colmask_of(i):
        raise CrownedError(f"column of {sq} must be empty")
    c = Crowned(arr.k, arr.F, arr.H, 1 << i, i, True)
    guard = 0
    while not is_start(c):
        c = move_inverse(c, check=False)
        guard += 1
        if guard > 2 * g.n + 2:
            raise CrownedError("failed to reach a starting arrangement")
    return unpoke(c)[0]


def Phi(arr: Hatted, c: int, frog: Square) -> tuple[Hatted, Square]:
    """Send a hop record (arrangement, column, frog that hopped) to (smaller arrangement, square)."""
    g = grid(arr.k)
    fi = g.index(*frog)
    if not 1 <= c <= arr.k or not hop_set(arr, c) >> fi & 1:
        raise CrownedError(f"{frog} did not hop when column {c} was poked")
    hat = (arr.H & g.colmask[c]).bit_length() - 1
    if all(arr.F >> j & 1 for j in g.path(g.opp[hat], fi)):
        return Hatted(arr.k, arr.F & ~(1 << g.opp[hat]), arr.H), frog
    return phi(g.square(hat), arr), frog


def Psi(arr: Hatted, sq: Square) -> tuple[Hatted, int, Square]:
    g = grid(arr.k)
    i = g.index(*sq)
    if arr.F == g.full:
        raise CrownedError("the grid is full; no hop record maps here")
    e = g.eb(arr.F, i)
    col = g.col[e]
    if arr.F >> g.opp[e] & 1:
        return Hatted(arr.k, arr.F | (1 << e), arr.H), col, sq
    return phi_inverse(g.square(e), arr), col, sq


def omega(k: int, m: int) -> list[tuple[Hatted, int, Square]]:
    from .hatted import enumerate_hatted

    g = grid(k)
    out = []
    for arr in enumerate_hatted(k, m):
        for c in range(1, k + 1):
            for i in _bits(hop_set(arr, c)):
                out.append((arr, c, g.square(i)))
    return out


def crown_coupling_holds(arr: Hatted, c: int) -> bool:
    """poke, move to the end, dethrone: same state and step count as the hatted poke."""
    start = poke_crowned(arr, c)
    expected, hop = hatted_poke(arr, c)
    if isinstance(start, Hatted):
        return start == arr and hop == 0
    end, steps = run_to_end(start, check=False)
    return dethrone(end) == expected and steps == hop
