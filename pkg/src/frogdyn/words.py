"""Words over the integer alphabet 1..sigma, periodic expansion and LCS kernels."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

Word = tuple[int, ...]


class InvalidInput(ValueError):
    """Raised when arguments fall outside an operation's domain."""


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise InvalidInput(f"alphabet size must be >= 1, got {self.size}")

    def __contains__(self, letter) -> bool:
        return isinstance(letter, (int, np.integer)) and 1 <= letter <= self.size

    def check(self, word: Sequence[int]) -> None:
        for letter in word:
            if letter not in self:
                raise InvalidInput(f"letter {letter} outside 1..{self.size}")


def periodic_expand(base: Sequence[int], n: int) -> Word:
    """First ``n`` letters of ``base`` repeated forever.

    >>> periodic_expand((1, 2, 2, 1), 7)
    (1, 2, 2, 1, 1, 2, 2)
    """
    if n < 0:
        raise InvalidInput(f"length must be non-negative, got {n}")
    if n == 0:
        return ()
    if not base:
        raise InvalidInput("cannot expand an empty base word")
    reps, rest = divmod(n, len(base))
    return tuple(base) * reps + tuple(base[:rest])


def zigzag_word(k: int) -> Word:
    """The word 1,2,...,k,k,...,2,1."""
    if k < 1:
        raise InvalidInput(f"k must be >= 1, got {k}")
    up = tuple(range(1, k + 1))
    return up + up[::-1]


def increasing_word(k: int) -> Word:
    """The word 1,2,...,k."""
    if k < 1:
        raise InvalidInput(f"k must be >= 1, got {k}")
    return tuple(range(1, k + 1))


def is_irreducible(w: Sequence[int]) -> bool:
    """True when ``w`` is not a whole power of a strictly shorter word."""
    n = len(w)
    if n == 0:
        raise InvalidInput("irreducibility is undefined for the empty word")
    w = tuple(w)
    for d in range(1, n):
        if n % d == 0 and w[:d] * (n // d) == w:
            return False
    return True


def lcs_length(u: Sequence, v: Sequence) -> int:
    """Length of a longest common subsequence, two rolling DP rows.

    The shorter argument indexes the rows so memory is O(min(len u, len v)).
    """
    if len(u) < len(v):
        u, v = v, u
    if not v:
        return 0
    prev = [0] * (len(v) + 1)
    cur = [0] * (len(v) + 1)
    for x in u:
        for j, y in enumerate(v, 1):
            if x == y:
                cur[j] = prev[j - 1] + 1
            else:
                a, b = prev[j], cur[j - 1]
                cur[j] = a if a > b else b
        prev, cur = cur, prev
    return prev[len(v)]


class BitParallelLCS:
    """Bit-vector LCS against a fixed reference word.

    Each letter of the query costs a constant number of big-integer operations
    on ``len(reference)``-bit words, so repeated queries against one periodic
    reference are cheap.
    """

    def __init__(self, reference: Sequence[int]):
        self.reference = tuple(reference)
        self.width = len(self.reference)
        self.mask = (1 << self.width) - 1
        match: dict[int, int] = {}
        for i, letter in enumerate(self.reference):
            match[letter] = match.get(letter, 0) | (1 << i)
        self.match = match

    def __call__(self, query: Sequence[int]) -> int:
        if self.width == 0:
            return 0
        mask = self.mask
        match = self.match
        v = mask
        for letter in query:
            u = v & match.get(letter, 0)
            v = ((v + u) | (v - u)) & mask
        return self.width - v.bit_count()


def lcs_length_bitparallel(u: Sequence, v: Sequence) -> int:
    return BitParallelLCS(u)(v)


def sample_word(alphabet: Alphabet | int, n: int, rng: np.random.Generator) -> Word:
    """``n`` i.i.d. uniform letters from 1..sigma drawn from ``rng``."""
    sigma = alphabet.size if isinstance(alphabet, Alphabet) else int(alphabet)
    if n < 0:
        raise InvalidInput(f"length must be non-negative, got {n}")
    if sigma < 1:
        raise InvalidInput(f"alphabet size must be >= 1, got {sigma}")
    return tuple(int(x) for x in rng.integers(1, sigma + 1, size=n))


def format_word(w: Sequence[int]) -> str:
    return ",".join(str(x) for x in w)


def parse_word(text: str) -> Word:
    text = "".join(text.split())
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise InvalidInput(f"not a comma-separated word: {text!r}") from exc
