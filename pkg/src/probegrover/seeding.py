"""Deterministic seed splitting for trials and sub-systems.

One master seed fans out into independent child streams keyed by
(strategy, trial, sub-system, stage). Because every consumer owns its own
stream, results are identical whether sub-systems execute serially or in
parallel, and each strategy reproduces the same numbers whether it runs
alone or inside a combined batch.
"""

from __future__ import annotations

import numpy as np


def child_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Generator for one slot of the deterministic seed tree."""
    if master_seed < 0:
        raise ValueError(f"master seed must be non-negative, got {master_seed}")
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=key))
