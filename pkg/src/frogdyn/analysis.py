"""State graphs, exact stationary distributions and the closed-form speed formulas."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

import networkx as nx

from .blind import blind_poke
from .hatted import Hatted, count_f, enumerate_hatted, fiber_count, grid, hatted_poke
from .ring import Ring, ring_poke
from .words import InvalidInput, increasing_word, zigzag_word


class GraphError(RuntimeError):
    """A poke function produced a state outside the declared state set."""


class DegenerateChainError(ArithmeticError):
    def __init__(self, dimension: int):
        super().__init__(f"stationary distribution is not unique: solution space has dimension {dimension}")
        self.dimension = dimension


@dataclass(frozen=True)
class TransitionGraph:
    """``edges[i][a - 1]`` is the index of the state reached from state ``i`` by letter ``a``."""

    states: tuple
    sigma: int
    edges: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.states)

    def in_degrees(self) -> list[int]:
        deg = [0] * len(self.states)
        for row in self.edges:
            for j in row:
                deg[j] += 1
        return deg

    def out_degrees(self) -> list[int]:
        return [len(row) for row in self.edges]

    def edge_list(self) -> list[tuple[int, int, int]]:
        """(source, letter, target) triples with multiplicity."""
        return [(i, a, j) for i, row in enumerate(self.edges) for a, j in enumerate(row, 1)]

    def index(self, state) -> int:
        return self.states.index(state)

    def redirected(self, i: int, letter: int, j: int) -> "TransitionGraph":
        """Copy with one edge retargeted; used to check that the verifiers notice."""
        edges = [list(row) for row in self.edges]
        edges[i][letter - 1] = j
        return TransitionGraph(self.states, self.sigma, tuple(tuple(r) for r in edges))


def _successors(poke_fn, sigma: int, chunk: Sequence) -> list[list]:
    return [[poke_fn(s, a) for a in range(1, sigma + 1)] for s in chunk]


def build_graph(states: Iterable[Hashable], poke_fn: Callable, sigma: int, workers: int = 1) -> TransitionGraph:
    """One edge per (state, letter). ``poke_fn`` must be picklable when ``workers > 1``."""
    if sigma < 1:
        raise InvalidInput(f"sigma must be >= 1, got {sigma}")
    states = tuple(states)
    index = {s: i for i, s in enumerate(states)}
    if len(index) != len(states):
        raise InvalidInput("states must be distinct")
    if workers > 1 and len(states) > 1:
        size = -(-len(states) // workers)
        chunks = [states[i:i + size] for i in range(0, len(states), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(partial(_successors, poke_fn, sigma), chunks))
        succ = [row for part in parts for row in part]
    else:
        succ = _successors(poke_fn, sigma, states)
    edges = []
    for s, row in zip(states, succ):
        try:
            edges.append(tuple(index[t] for t in row))
        except KeyError as exc:
            raise GraphError(f"poke of {s!r} left the state set: {exc.args[0]!r}") from None
    return TransitionGraph(states, sigma, tuple(edges))


# picklable poke functions for the three grid/ring processes

def _hatted_step(state: Hatted, a: int) -> Hatted:
    return hatted_poke(state, a)[0]


def _blind_grid_step(k: int, F: int, a: int) -> int:
    """Blind poke on the zigzag ring, with sets stored as grid masks."""
    g = grid(k)
    ring = Ring(zigzag_word(k))
    s, _ = blind_poke(ring, g.mask_to_ring(F), a)
    return g.ring_to_mask(s)


def _blind_ring_step(labels: tuple, s: frozenset, a: int) -> frozenset:
    return blind_poke(Ring(labels), s, a)[0]


def hatted_graph(k: int, m: int, sigma: int, workers: int = 1) -> TransitionGraph:
    if sigma < k:
        raise InvalidInput(f"need sigma >= k, got sigma={sigma}, k={k}")
    return build_graph(enumerate_hatted(k, m), _hatted_step, sigma, workers)


def grid_blind_states(k: int, m: int) -> tuple[int, ...]:
    n = 2 * k
    if not 0 <= m <= n:
        raise InvalidInput(f"m={m} outside 0..{n}")
    return tuple(sorted(sum(1 << i for i in c) for c in combinations(range(n), m)))


def zigzag_blind_graph(k: int, m: int, sigma: int, workers: int = 1) -> TransitionGraph:
    if sigma < k:
        raise InvalidInput(f"need sigma >= k, got sigma={sigma}, k={k}")
    return build_graph(grid_blind_states(k, m), partial(_blind_grid_step, k), sigma, workers)


def ring_blind_graph(labels: Sequence[int], m: int, sigma: int, workers: int = 1) -> TransitionGraph:
    labels = tuple(labels)
    n = len(labels)
    if not 0 <= m <= n:
        raise InvalidInput(f"m={m} outside 0..{n}")
    states = [frozenset(c) for c in combinations(range(n), m)]
    return build_graph(states, partial(_blind_ring_step, labels), sigma, workers)


def baseline_blind_graph(k: int, m: int, sigma: int) -> TransitionGraph:
    """Blind chain for the increasing word 1 2 ... k."""
    return ring_blind_graph(increasing_word(k), m, sigma)


@dataclass(frozen=True)
class DegreeReport:
    regular: bool
    sigma: int
    in_degree_histogram: dict

    def __bool__(self) -> bool:
        return self.regular


def check_regular(g: TransitionGraph) -> DegreeReport:
    hist: dict[int, int] = {}
    for d in g.in_degrees():
        hist[d] = hist.get(d, 0) + 1
    regular = set(hist) <= {g.sigma} and all(d == g.sigma for d in g.out_degrees())
    return DegreeReport(regular, g.sigma, dict(sorted(hist.items())))


@dataclass(frozen=True)
class RationalDist:
    states: tuple
    probs: tuple[Fraction, ...]
    dimension: int = 1

    def __getitem__(self, state) -> Fraction:
        return self.probs[self.states.index(state)]

    def as_dict(self) -> dict:
        return dict(zip(self.states, self.probs))


def apply_operator(g: TransitionGraph, vec: Sequence[Fraction]) -> list[Fraction]:
    """Row vector times the transition matrix."""
    out = [Fraction(0)] * len(g.states)
    step = Fraction(1, g.sigma)
    for i, row in enumerate(g.edges):
        if vec[i]:
            share = vec[i] * step
            for j in row:
                out[j] += share
    return out


def is_stationary(g: TransitionGraph, vec: Sequence[Fraction]) -> bool:
    return sum(vec) == 1 and all(v >= 0 for v in vec) and apply_operator(g, vec) == list(vec)


def verify_uniform_stationary(g: TransitionGraph) -> bool:
    n = len(g.states)
    if n == 0:
        return False
    return is_stationary(g, [Fraction(1, n)] * n)


def closed_classes(g: TransitionGraph) -> list[list[int]]:
    dg = nx.DiGraph()
    dg.add_nodes_from(range(len(g.states)))
    dg.add_edges_from((i, j) for i, row in enumerate(g.edges) for j in row)
    cond = nx.condensation(dg)
    sinks = [c for c in cond.nodes if cond.out_degree(c) == 0]
    return sorted(sorted(cond.nodes[c]["members"]) for c in sinks)


def _solve_class(g: TransitionGraph, members: list[int]) -> dict[int, Fraction]:
    # pi (P - I) = 0 restricted to a closed class, last equation swapped for sum(pi) = 1
    pos = {s: r for r, s in enumerate(members)}
    n = len(members)
    sigma = g.sigma
    rows = [[Fraction(0)] * (n + 1) for _ in range(n)]
    for s in members:
        i = pos[s]
        for t in g.edges[s]:
            rows[pos[t]][i] += 1
        rows[i][i] -= sigma
    rows[n - 1] = [Fraction(1)] * n + [Fraction(1)]
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        prow = [v / p for v in rows[col]]
        rows[col] = prow
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
    return {members[i]: rows[i][n] for i in range(n)}


def exact_stationary(g: TransitionGraph, require_unique: bool = False) -> RationalDist:
    """A stationary distribution in exact arithmetic.

    Stationary distributions are mixtures of the ones supported on closed
    communicating classes, so the solution space has dimension equal to the
    number of such classes. With several classes, the equal-weight mixture is
    returned and ``dimension`` reports the count.
    """
    classes = closed_classes(g)
    if require_unique and len(classes) != 1:
        raise DegenerateChainError(len(classes))
    probs = [Fraction(0)] * len(g.states)
    weight = Fraction(1, len(classes))
    for members in classes:
        for s, v in _solve_class(g, members).items():
            probs[s] += weight * v
    return RationalDist(g.states, tuple(probs), len(classes))


def blind_stationary_from_fibers(k: int, m: int) -> RationalDist:
    """Weights proportional to the number of hat placements over each occupancy set."""
    states = grid_blind_states(k, m)
    total = count_f(2 * k, m)
    return RationalDist(states, tuple(Fraction(fiber_count(k, F), total) for F in states))


# closed forms

def _check_speed_args(k: int, m: int, sigma: int, top: int) -> None:
    if k < 1:
        raise InvalidInput(f"k must be >= 1, got {k}")
    if sigma < k:
        raise InvalidInput(f"need sigma >= k, got sigma={sigma}, k={k}")
    if not 1 <= m <= top:
        raise InvalidInput(f"m={m} outside 1..{top}")


def cumulative_speed(k: int, m: int, sigma: int) -> Fraction:
    """Total speed of the m nastiest frogs on the zigzag ring."""
    if m == 0:
        return Fraction(0)
    _check_speed_args(k, m, sigma, 2 * k)
    return Fraction(2 * k * count_f(2 * k, m - 1), sigma * count_f(2 * k, m))


def speeds(k: int, sigma: int) -> tuple[Fraction, ...]:
    _check_speed_args(k, 1, sigma, 2 * k)
    cum = [cumulative_speed(k, m, sigma) for m in range(2 * k + 1)]
    return tuple(cum[m] - cum[m - 1] for m in range(1, 2 * k + 1))


def bc_speed(k: int, m: int, sigma: int) -> Fraction:
    """Speed of the m-th frog for the increasing word 1 2 ... k."""
    _check_speed_args(k, m, sigma, k)
    return Fraction(k * (k + 1), sigma * (k + 2 - m) * (k + 1 - m))


def bc_speeds(k: int, sigma: int) -> tuple[Fraction, ...]:
    return tuple(bc_speed(k, m, sigma) for m in range(1, k + 1))


@dataclass(frozen=True)
class Threshold:
    """Largest m with s_m <= rho; m = 0 means no speed is that small."""

    m: int
    equality: bool

    @property
    def sentinel(self) -> bool:
        return self.m == 0


def _threshold(values: Sequence[Fraction], rho) -> Threshold:
    rho = Fraction(rho)
    if rho < 0:
        raise InvalidInput(f"rho must be non-negative, got {rho}")
    for m in range(len(values), 0, -1):
        if values[m - 1] <= rho:
            return Threshold(m, values[m - 1] == rho)
    return Threshold(0, False)


def threshold_m(k: int, sigma: int, rho) -> Threshold:
    return _threshold(speeds(k, sigma), rho)


def bc_threshold_m(k: int, sigma: int, rho) -> Threshold:
    return _threshold(bc_speeds(k, sigma), rho)


def gamma_zigzag(k: int, sigma: int, rho) -> Fraction:
    rho = Fraction(rho)
    m = threshold_m(k, sigma, rho).m
    const = Fraction(count_f(2 * k, m - 1), sigma * count_f(2 * k, m)) if m else Fraction(0)
    return (1 - Fraction(m, 2 * k)) * rho + const


def gamma_bc(k: int, sigma: int, rho) -> Fraction:
    rho = Fraction(rho)
    m = bc_threshold_m(k, sigma, rho).m
    return (1 - Fraction(m, k)) * rho + Fraction(m, sigma * (k + 1 - m))


def gamma_from_speeds(speed_values: Sequence[Fraction], length: int, rho) -> Fraction:
    rho = Fraction(rho)
    if length < 1:
        raise InvalidInput("word length must be positive")
    return rho - Fraction(1, length) * sum((rho - s for s in speed_values if s <= rho), Fraction(0))


# enumeration oracles

def total_hops(k: int, m: int) -> int:
    """Sum over all arrangements and columns of the hop count."""
    return sum(hatted_poke(arr, c)[1] for arr in enumerate_hatted(k, m) for c in range(1, k + 1))


def speed_sum_identity(k: int, m: int) -> bool:
    if not 0 <= m <= 2 * k:
        raise InvalidInput(f"m={m} outside 0..{2 * k}")
    rhs = 2 * k * count_f(2 * k, m - 1) if m >= 1 else 0
    return total_hops(k, m) == rhs


def expected_hops(k: int, m: int, sigma: int) -> Fraction:
    """Mean hop count per random letter under the uniform hatted distribution."""
    if m == 0:
        return Fraction(0)
    return Fraction(total_hops(k, m), sigma * count_f(2 * k, m))


def frog_chain_speeds(labels: Sequence[int], sigma: int) -> tuple[Fraction, ...]:
    """Exact speeds from the full frog chain's stationary distribution (small rings only)."""
    from itertools import permutations

    ring = Ring(tuple(labels))
    states = tuple(permutations(range(ring.size)))

    def step(f, a):
        return ring_poke(ring, f, a)[0]

    g = build_graph(states, step, sigma)
    pi = exact_stationary(g, require_unique=True)
    out = [Fraction(0)] * ring.size
    for f, p in zip(states, pi.probs):
        if not p:
            continue
        for a in range(1, sigma + 1):
            disp = ring_poke(ring, f, a)[1]
            for i, d in enumerate(disp):
                out[i] += p * d
    return tuple(v / sigma for v in out)


# tables

def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def counting_csv(k: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "m", "f(n,m)"])
    n = 2 * k
    for m in range(n + 1):
        w.writerow([n, m, count_f(n, m)])
    return buf.getvalue()


def speeds_rows(k: int, sigma: int, digits: int = 6) -> list[list]:
    return [[k, sigma, m, format_rational(s), f"{float(s):.{digits}f}"]
            for m, s in enumerate(speeds(k, sigma), 1)]


def speeds_csv(k: int, sigma: int, digits: int = 6) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "sigma", "m", "s_m", "decimal"])
    w.writerows(speeds_rows(k, sigma, digits))
    return buf.getvalue()


def gamma_row(k: int, sigma: int, rho) -> list:
    th = threshold_m(k, sigma, rho)
    return [k, sigma, format_rational(Fraction(rho)), th.m, str(th.equality).lower(),
            format_rational(gamma_zigzag(k, sigma, rho))]


def gamma_csv(rows: Iterable[tuple[int, int, Fraction]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "sigma", "rho", "m", "equality", "gamma"])
    for k, sigma, rho in rows:
        w.writerow(gamma_row(k, sigma, rho))
    return buf.getvalue()
