"""Seeded random generators. Every draw flows from an explicit 64-bit seed."""

from typing import Optional

import numpy as np


def make_rng(seed: Optional[int]) -> np.random.Generator:
    """Generator over the counter-based Philox bit generator."""
    return np.random.Generator(np.random.Philox(seed))


def derive_seed(base: int, *keys: int) -> int:
    """Deterministic child seed for (base, *keys); distinct keys give independent streams."""
    entropy = [int(base), *(int(k) for k in keys)]
    state = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    # top bit cleared so seeds fit signed 64-bit columns
    return int(state[0]) | ((int(state[1]) & 0x7FFFFFFF) << 32)
