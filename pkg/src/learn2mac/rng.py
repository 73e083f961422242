"""Seed derivation for reproducible per-device random streams.

Every random stream in a run is a ``numpy.random.Generator`` backed by
PCG64 (64-bit output, 128-bit state).  Streams are keyed from one master
seed with SplitMix64 so that each device gets its own independent
dictionary and its own sampling stream:

    seed(master, device_id, stream) = sm(sm(master ^ sm(device_id)) ^ sm(stream))

where ``sm`` is the SplitMix64 finalizer applied after a golden-ratio
increment.
"""

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# stream ids
DICTIONARY = 0
SAMPLING = 1
TRAFFIC = 2


def splitmix64(x: int) -> int:
    """One SplitMix64 step: increment by the golden ratio and finalize."""
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, device_id: int, stream: int = DICTIONARY) -> int:
    h = splitmix64((master_seed & MASK64) ^ splitmix64(device_id & MASK64))
    return splitmix64(h ^ splitmix64(stream & MASK64))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & MASK64))


def device_rng(master_seed: int, device_id: int, stream: int) -> np.random.Generator:
    return make_rng(derive_seed(master_seed, device_id, stream))
