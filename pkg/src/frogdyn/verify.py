"""Exhaustive and randomized verification suites shared by the CLI and the tests."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import analysis, crowned
from .blind import blind_poke, blind_poke_naive
from .hatted import count_f, enumerate_hatted, grid, hatted_poke
from .ring import Ring, project_nastiest, ring_poke
from .rng import DEFAULT_SEED, stream
from .words import zigzag_word


@dataclass(frozen=True)
class CaseResult:
    name: str
    passed: bool
    detail: str = ""


def suite_regular(k: int, sigma: int | None = None, **_) -> list[CaseResult]:
    sigma = k if sigma is None else sigma
    out = []
    for m in range(2 * k + 1):
        report = analysis.check_regular(analysis.hatted_graph(k, m, sigma))
        out.append(CaseResult(f"regular k={k} m={m} sigma={sigma}", report.regular,
                              f"in-degrees {report.in_degree_histogram}"))
    return out


def suite_uniform(k: int, sigma: int | None = None, **_) -> list[CaseResult]:
    sigma = k if sigma is None else sigma
    return [CaseResult(f"uniform k={k} m={m} sigma={sigma}",
                       analysis.verify_uniform_stationary(analysis.hatted_graph(k, m, sigma)))
            for m in range(2 * k + 1)]


def suite_fibers(k: int, sigma: int | None = None, **_) -> list[CaseResult]:
    sigma = k if sigma is None else sigma
    out = []
    for m in range(2 * k + 1):
        g = analysis.zigzag_blind_graph(k, m, sigma)
        dist = analysis.blind_stationary_from_fibers(k, m)
        out.append(CaseResult(f"fibers k={k} m={m} sigma={sigma}", analysis.is_stationary(g, dist.probs)))
    return out


def _random_ring(rng, max_len: int) -> tuple[Ring, int]:
    size = int(rng.integers(1, max_len + 1))
    sigma = int(rng.integers(1, 5))
    return Ring(tuple(int(x) for x in rng.integers(1, sigma + 1, size=size))), sigma


def suite_coupling(k: int, sigma: int | None = None, trials: int = 10_000, seed: int = DEFAULT_SEED,
                   max_len: int = 8, **_) -> list[CaseResult]:
    """Three randomized levels: blind order-independence, frog to blind, hatted to blind."""
    sigma = k if sigma is None else sigma
    rng = stream(seed, 0)
    bad = 0
    for _ in range(trials):
        ring, s = _random_ring(rng, max_len)
        m = int(rng.integers(0, ring.size + 1))
        pads = frozenset(int(p) for p in rng.permutation(ring.size)[:m])
        a = int(rng.integers(1, s + 1))
        order = [int(p) for p in rng.permutation(ring.size)]
        if blind_poke_naive(ring, pads, a, order) != blind_poke(ring, pads, a):
            bad += 1
    out = [CaseResult(f"blind order-independence ({trials} trials)", bad == 0, f"{bad} mismatches")]

    rng = stream(seed, 1)
    bad = 0
    for _ in range(trials):
        ring, s = _random_ring(rng, max_len)
        f = tuple(int(p) for p in rng.permutation(ring.size))
        m = int(rng.integers(1, ring.size + 1))
        a = int(rng.integers(1, s + 1))
        f2, disp = ring_poke(ring, f, a)
        s2, hop = blind_poke(ring, project_nastiest(f, m), a)
        if project_nastiest(f2, m) != s2 or sum(disp[:m]) != hop:
            bad += 1
    out.append(CaseResult(f"frog to blind projection ({trials} trials)", bad == 0, f"{bad} mismatches"))

    rng = stream(seed, 2)
    g = grid(k)
    ring = Ring(zigzag_word(k))
    levels = [enumerate_hatted(k, m) for m in range(2 * k + 1)]
    bad = 0
    for _ in range(trials):
        states = levels[int(rng.integers(0, 2 * k + 1))]
        arr = states[int(rng.integers(0, len(states)))]
        a = int(rng.integers(1, sigma + 1))
        after, hop = hatted_poke(arr, a, sigma)
        s2, hop2 = blind_poke(ring, g.mask_to_ring(arr.F), a, sigma)
        if g.ring_to_mask(s2) != after.F or hop != hop2 or not after.is_valid():
            bad += 1
    out.append(CaseResult(f"hatted to blind, k={k} ({trials} trials)", bad == 0, f"{bad} mismatches"))
    return out


def _search_inverse(states: list) -> dict:
    return {crowned.move(c, check=False): c for c in states if not crowned.is_end(c)}


def suite_bijections(k: int, **_) -> list[CaseResult]:
    g = grid(k)
    out = []
    for m in range(2 * k + 1):
        states = crowned.enumerate_crowned(k, m)
        members = set(states)
        starts = [c for c in states if crowned.is_start(c)]
        ends = [c for c in states if crowned.is_end(c)]
        inverse = _search_inverse(states)
        into = all(d in members and not crowned.is_start(d) for d in inverse)
        onto = len(inverse) == len(states) - len(ends) and all(
            d in inverse for d in states if not crowned.is_start(d))
        constructive = all(crowned.move_inverse(d, check=False) == c for d, c in inverse.items())
        out.append(CaseResult(f"move bijection k={k} m={m}", into and onto,
                              f"{len(states)} states, {len(starts)} start, {len(ends)} end"))
        out.append(CaseResult(f"constructive inverse k={k} m={m}", constructive))
        hats = sum(arr.H.bit_count() for arr in enumerate_hatted(k, m))
        out.append(CaseResult(f"|Start| = |End| = sum |H| k={k} m={m}", len(starts) == len(ends) == hats))

        coupled = all(crowned.crown_coupling_holds(arr, c)
                      for arr in enumerate_hatted(k, m) for c in range(1, k + 1))
        out.append(CaseResult(f"crown coupling k={k} m={m}", coupled))

        ok = True
        for i in range(g.n):
            sq = g.square(i)
            domain = [a for a in enumerate_hatted(k, m) if crowned.phi_domain(sq, a)]
            images = [crowned.phi(sq, a) for a in domain]
            codomain = [b for b in enumerate_hatted(k, m - 1) if not b.F & g.colmask_of(i)] if m >= 1 else []
            ok &= sorted(images) == sorted(codomain)
            ok &= all(crowned.phi_inverse(sq, b) == a for a, b in zip(domain, images))
        out.append(CaseResult(f"phi bijection k={k} m={m}", ok))

        if m >= 1:
            omega = crowned.omega(k, m)
            images = [crowned.Phi(*t) for t in omega]
            size_ok = len(omega) == 2 * k * count_f(2 * k, m - 1) == len(set(images))
            forward = all(crowned.Psi(*img) == t for t, img in zip(omega, images))
            backward = all(crowned.Phi(*crowned.Psi(b, g.square(i))) == (b, g.square(i))
                           for b in enumerate_hatted(k, m - 1) for i in range(g.n))
            out.append(CaseResult(f"Phi/Psi inverse k={k} m={m}", size_ok and forward and backward,
                                  f"|Omega| = {len(omega)}"))
    return out


def suite_speed_identity(k: int, sigma: int | None = None, **_) -> list[CaseResult]:
    sigma = k if sigma is None else sigma
    out = []
    for m in range(2 * k + 1):
        out.append(CaseResult(f"hop sum k={k} m={m}", analysis.speed_sum_identity(k, m)))
        if m >= 1:
            same = analysis.expected_hops(k, m, sigma) == analysis.cumulative_speed(k, m, sigma)
            out.append(CaseResult(f"cumulative speed k={k} m={m} sigma={sigma}", same))
    return out


def corner_counts(k: int, m: int) -> tuple[int, int]:
    g = grid(k)
    corner = 1 << g.index(1, k)
    left = sum(1 for a in enumerate_hatted(k, m) if a.F & corner)
    right = sum(1 for a in enumerate_hatted(k, m - 1) if not a.F & corner) if m >= 1 else 0
    return left, right


def suite_corner(k: int, **_) -> list[CaseResult]:
    out = []
    for m in range(2 * k):
        left, right = corner_counts(k, m)
        out.append(CaseResult(f"corner k={k} m={m}", left == right, f"{left} vs {right}"))
    return out


SUITES: dict[str, Callable[..., list[CaseResult]]] = {
    "regular": suite_regular,
    "uniform": suite_uniform,
    "fibers": suite_fibers,
    "coupling": suite_coupling,
    "bijections": suite_bijections,
    "speed-identity": suite_speed_identity,
    "corner": suite_corner,
}


def run_suite(name: str, **kwargs) -> list[CaseResult]:
    return SUITES[name](**kwargs)
