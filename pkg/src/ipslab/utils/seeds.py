"""Deterministic seed derivation for independent sub-tasks."""

import hashlib
import random


def derive_seed(seed: int, *labels: object) -> int:
    """A 64-bit seed determined by *seed* and the textual *labels*.

    Uses SHA-256, so the result is stable across processes (unlike ``hash``).
    """
    text = ":".join([str(seed), *(str(label) for label in labels)])
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def derive_rng(seed: int, *labels: object) -> random.Random:
    return random.Random(derive_seed(seed, *labels))
