"""Deterministic seed-stream derivation.

Every stochastic operation in the package draws from a stream identified by
(master_seed, purpose_tag, index). Streams are derived through
numpy's SeedSequence with the purpose tag hashed into the spawn key, which
makes them deterministic, independent, and collision-free across distinct
(purpose_tag, index) pairs. Trials scheduled on any number of workers
therefore reproduce bit-identical results.
"""

from __future__ import annotations

import hashlib

import numpy as np

SeedLike = "int | np.random.SeedSequence | np.random.Generator"


def _tag_to_int(tag: str) -> int:
    digest = hashlib.blake2s(tag.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def seed_stream(master_seed: int, purpose: str, index: int = 0) -> np.random.SeedSequence:
    """Derive the SeedSequence for (master_seed, purpose, index).

    Args:
        master_seed: experiment-level seed.
        purpose: free-form tag naming the consumer, e.g. "sweep:n=16:mult=1.0".
        index: trial index within the purpose, >= 0.

    Returns:
        A SeedSequence; identical arguments always return an identical stream,
        and distinct (purpose, index) pairs never collide (64-bit tag hash
        plus the index are both part of the spawn key).
    """
    if index < 0:
        raise ValueError("index must be nonnegative")
    return np.random.SeedSequence(master_seed, spawn_key=(_tag_to_int(purpose), index))


def as_generator(seed) -> np.random.Generator:
    """Coerce an int, SeedSequence, or Generator into a Generator.

    Passing a Generator returns it unchanged so callers can share one stream
    across several draws; anything else creates a fresh PCG64 stream.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
