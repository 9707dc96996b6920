"""Seeded, splittable random streams.

All randomness in the package flows through Philox counter-based generators
keyed by an explicit 64-bit seed.  The seed-to-stream mapping is fixed:

    stream(seed, *path) == Generator(Philox(SeedSequence(entropy=seed mod 2**64,
                                                         spawn_key=path)))

Sub-streams for disjoint ``path`` tuples are statistically independent, so
work split across chunks (or grid points) is schedule-independent: chunk i
always consumes stream ``(seed, i)`` no matter which worker runs it.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def stream(seed: int, *path: int) -> np.random.Generator:
    """Return the Philox generator for sub-stream `path` of `seed`."""
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=tuple(path))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *path: int) -> int:
    """Derive a fresh 64-bit seed for a named sub-task of `seed`."""
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=tuple(path))
    return int(ss.generate_state(1, np.uint64)[0])
