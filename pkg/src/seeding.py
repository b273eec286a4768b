"""Stable seed derivation."""

import hashlib

import numpy as np

SEED_MASK = (1 << 64) - 1


def derive_seed(*parts: object) -> int:
    """Unsigned 64-bit seed from a stable hash of the given parts."""
    key = ":".join(str(part) for part in parts).encode("utf-8")
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big") & SEED_MASK


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for (seed, stream...) via numpy's SeedSequence."""
    return np.random.default_rng([seed & SEED_MASK, *stream])
