"""Reproducible random streams derived from a run seed and a task name."""
from __future__ import annotations

import hashlib

import numpy as np


def task_key(task: str) -> int:
    """Return a stable 64-bit key for ``task`` (first 8 bytes of its SHA-256)."""

    digest = hashlib.sha256(task.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def stream_for(seed: int, task: str) -> np.random.Generator:
    """Return a counter-based Philox stream for ``(seed, task)``.

    The stream depends only on the seed and the task name, so tasks can run in
    any order or concurrently without changing each other's draws.
    """

    if seed < 0:
        raise ValueError("Seed must be a non-negative integer.")
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(task_key(task),))
    return np.random.Generator(np.random.Philox(sequence))
