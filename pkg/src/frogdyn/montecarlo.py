"""Seeded Monte Carlo for frog speeds and LCS constants.

Every random draw comes from a Philox stream keyed by ``(seed, index)``. Speed
chains use one stream per worker; LCS samples use one stream per sample, so
the sample set does not depend on how many workers run.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .ring import Ring, _poke_inplace
from .rng import DEFAULT_SEED, stream
from .words import BitParallelLCS, InvalidInput, periodic_expand, sample_word

DEFAULT_BATCHES = 30


@dataclass(frozen=True)
class SpeedEstimate:
    rates: tuple[float, ...]
    stderr: tuple[float, ...]
    cumulative: tuple[float, ...]
    cumulative_stderr: tuple[float, ...]
    n: int
    seed: int
    workers: int
    burn_in: int


@dataclass(frozen=True)
class LcsEstimate:
    mean: float
    sd: float
    samples: int
    n: int
    rho: Fraction
    seed: int
    values: tuple[float, ...] = field(repr=False, default=())

    @property
    def stderr(self) -> float:
        return self.sd / math.sqrt(self.samples) if self.samples > 1 else 0.0


def _split(total: int, parts: int) -> list[int]:
    q, r = divmod(total, parts)
    return [q + (1 if i < r else 0) for i in range(parts)]


def _speed_worker(labels: tuple, sigma: int, n: int, burn_in: int, batches: int, seed: int, index: int) -> np.ndarray:
    """Per-batch displacement totals, shape (batches, ell)."""
    ring = Ring(labels)
    size = ring.size
    pads = [ring.pads(a) for a in range(sigma + 1)]
    pos = list(range(size))
    occ = list(range(size))
    rng = stream(seed, index)
    junk = [0] * size
    for a in rng.integers(1, sigma + 1, size=burn_in).tolist():
        _poke_inplace(pads[a], size, pos, occ, junk)
    out = np.zeros((batches, size), dtype=np.int64)
    letters = rng.integers(1, sigma + 1, size=n).tolist()
    start = 0
    for b, length in enumerate(_split(n, batches)):
        disp = [0] * size
        for a in letters[start:start + length]:
            _poke_inplace(pads[a], size, pos, occ, disp)
        out[b] = disp
        start += length
    return out


def _batch_stats(totals: np.ndarray, lengths: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    keep = lengths > 0
    totals, lengths = totals[keep], lengths[keep]
    n = lengths.sum()
    rates = totals.sum(axis=0) / n
    if len(lengths) < 2:
        return rates, np.zeros_like(rates)
    means = totals / lengths[:, None]
    se = means.std(axis=0, ddof=1) / math.sqrt(len(lengths))
    return rates, se


def simulate_speeds(ring: Ring, sigma: int, n: int, seed: int = DEFAULT_SEED, workers: int = 1,
                    burn_in: int | None = None, batches: int = DEFAULT_BATCHES) -> SpeedEstimate:
    """Empirical pads-per-poke rate of every frog, started from the identity arrangement.

    ``n`` pokes are shared across ``workers`` independent chains, each with
    its own burn-in. Standard errors are batch means over all batches of all
    chains. ``n == 0`` returns zero rates.
    """
    if n < 0:
        raise InvalidInput(f"n must be non-negative, got {n}")
    if sigma < 1 or workers < 1 or batches < 1:
        raise InvalidInput("sigma, workers and batches must be positive")
    size = ring.size
    burn_in = 10 * size if burn_in is None else burn_in
    if n == 0:
        zero = (0.0,) * size
        return SpeedEstimate(zero, zero, zero, zero, 0, seed, workers, burn_in)
    shares = _split(n, workers)
    args = [(ring.labels, sigma, shares[w], burn_in, batches, seed, w) for w in range(workers)]
    if workers == 1:
        parts = [_speed_worker(*args[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_speed_worker, *zip(*args)))
    totals = np.vstack(parts).astype(float)
    lengths = np.array([length for share in shares for length in _split(share, batches)], dtype=float)
    rates, se = _batch_stats(totals, lengths)
    cum_rates, cum_se = _batch_stats(np.cumsum(totals, axis=1), lengths)
    return SpeedEstimate(tuple(rates.tolist()), tuple(se.tolist()), tuple(cum_rates.tolist()),
                         tuple(cum_se.tolist()), n, seed, workers, burn_in)


def _lcs_worker(reference: tuple, sigma: int, n: int, seed: int, indices: Sequence[int]) -> list[int]:
    lcs = BitParallelLCS(reference)
    return [lcs(sample_word(sigma, n, stream(seed, i))) for i in indices]


def estimate_lcs_gamma(base: Sequence[int], sigma: int, rho, n: int, samples: int,
                       seed: int = DEFAULT_SEED, workers: int = 1) -> LcsEstimate:
    """Mean of LCS(R, base^(floor(rho n))) / n over random R of length n."""
    if n < 1 or samples < 1 or workers < 1:
        raise InvalidInput("n, samples and workers must be positive")
    rho = Fraction(rho)
    if rho < 0:
        raise InvalidInput(f"rho must be non-negative, got {rho}")
    reference = periodic_expand(tuple(base), math.floor(rho * n))
    if workers == 1:
        lengths = _lcs_worker(reference, sigma, n, seed, range(samples))
    else:
        chunks = [list(range(w, samples, workers)) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_lcs_worker, *zip(*[(reference, sigma, n, seed, c) for c in chunks])))
        lengths = [0] * samples
        for chunk, part in zip(chunks, parts):
            for i, v in zip(chunk, part):
                lengths[i] = v
    values = np.array(lengths, dtype=float) / n
    sd = float(values.std(ddof=1)) if samples > 1 else 0.0
    return LcsEstimate(float(values.mean()), sd, samples, n, rho, seed, tuple(values.tolist()))


CSV_COLUMNS = ["run_id", "k", "sigma", "rho", "n", "samples", "statistic", "value", "stderr", "seed"]


def speed_csv_rows(run_id: str, k: int | str, sigma: int, est: SpeedEstimate) -> list[list]:
    rows = []
    for m, (v, se) in enumerate(zip(est.rates, est.stderr), 1):
        rows.append([run_id, k, sigma, "", est.n, "", f"s_{m}", repr(v), repr(se), est.seed])
    for m, (v, se) in enumerate(zip(est.cumulative, est.cumulative_stderr), 1):
        rows.append([run_id, k, sigma, "", est.n, "", f"cumulative_{m}", repr(v), repr(se), est.seed])
    return rows


def lcs_csv_rows(run_id: str, k: int | str, sigma: int, est: LcsEstimate) -> list[list]:
    rho = f"{est.rho.numerator}/{est.rho.denominator}"
    return [
        [run_id, k, sigma, rho, est.n, est.samples, "lcs_over_n_mean", repr(est.mean), repr(est.stderr), est.seed],
        [run_id, k, sigma, rho, est.n, est.samples, "lcs_over_n_sd", repr(est.sd), "", est.seed],
    ]


def to_csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(rows)
    return buf.getvalue()
