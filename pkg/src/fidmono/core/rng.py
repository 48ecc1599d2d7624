"""Seeded, order-independent random streams.

Streams come from numpy's counter-based Philox generator. A sub-stream for
sample ``i`` is keyed by ``(seed, i)`` through :class:`numpy.random.SeedSequence`,
so a sample's draws do not depend on which worker handles it or in what order.
"""

import numpy as np

from ..errors import InputError

_MASK64 = (1 << 64) - 1


def _check_seed(seed) -> int:
    if isinstance(seed, (bool, np.bool_)) or int(seed) != seed:
        raise InputError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if seed < 0 or seed > _MASK64:
        raise InputError(f"seed must fit in 64 unsigned bits, got {seed}")
    return seed


def make_rng(seed: int, *stream) -> np.random.Generator:
    """Philox generator for ``seed`` and an optional stream path such as ``(sample_index,)``."""
    key = [_check_seed(seed), *(_check_seed(s) for s in stream)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))


def derive_seed(seed: int, *stream) -> int:
    """A 64-bit seed for the sub-stream ``(seed, *stream)``."""
    key = [_check_seed(seed), *(_check_seed(s) for s in stream)]
    return int(np.random.SeedSequence(key).generate_state(1, np.uint64)[0])
