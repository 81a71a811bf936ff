"""Counter-based random streams.

Every trial owns one Philox block addressed by ``(seed, stream, trial)``:
the key is ``seed + stream * 2**64`` and the counter is the trial index.  A
block yields four uniforms in ``[0, 1)``.  Because the block for trial ``i``
depends only on its address, any split of a trial range into chunks (or
across workers) reproduces exactly the same draws.
"""

from __future__ import annotations

import numpy as np

UNIFORMS_PER_TRIAL = 4
_TWO64 = 1 << 64


def _key(seed: int, stream: int) -> int:
    seed, stream = int(seed), int(stream)
    if not (0 <= seed < _TWO64 and 0 <= stream < _TWO64):
        raise ValueError("seed and stream must lie in [0, 2**64)")
    return seed + stream * _TWO64


def trial_uniforms(seed: int, start: int, count: int, stream: int = 0) -> np.ndarray:
    """Uniforms for trials ``start .. start+count-1``, shape ``(count, 4)``."""
    if start < 0 or count < 0:
        raise ValueError("start and count must be non-negative")
    bg = np.random.Philox(key=_key(seed, stream))
    bg.advance(int(start))
    raw = bg.random_raw(UNIFORMS_PER_TRIAL * int(count)).astype(np.uint64)
    u = (raw >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))
    return u.reshape(int(count), UNIFORMS_PER_TRIAL)


def generator(seed: int, stream: int = 0) -> np.random.Generator:
    """A ``numpy`` Generator on the Philox stream ``(seed, stream)``.

    Used for sequential draws (random test states, unitaries) where trial
    addressing is not needed.
    """
    return np.random.Generator(np.random.Philox(key=_key(seed, stream)))
