"""Deterministic named random streams.

Every random choice in the pipeline draws from a stream derived from one
root seed plus a stream name, so independent stages (and parallel workers)
never share or race a generator.
"""

import hashlib

import numpy as np


def _name_words(name: str) -> list[int]:
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    return [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]


def stream(root_seed: int, name: str) -> np.random.Generator:
    """Generator for the stream `name` under `root_seed`."""
    if root_seed < 0:
        raise ValueError("root seed must be non-negative")
    seq = np.random.SeedSequence([root_seed, *_name_words(name)])
    return np.random.default_rng(seq)


def derive_seed(root_seed: int, name: str) -> int:
    """A plain integer sub-seed for APIs that take `seed: int`."""
    if root_seed < 0:
        raise ValueError("root seed must be non-negative")
    digest = hashlib.sha256(f"{root_seed}/{name}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")
