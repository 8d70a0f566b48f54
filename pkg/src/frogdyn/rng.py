"""Counter-based random streams keyed by (seed, stream index)."""
from __future__ import annotations

import numpy as np

DEFAULT_SEED = 20240917


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Independent Philox generator for substream ``index`` of ``seed``.

    Substreams depend only on the pair, never on how work is split across
    workers, so merged results are reproducible for any worker count.
    """
    if seed < 0 or index < 0:
        raise ValueError("seed and stream index must be non-negative")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))
