"""Versioned low-discrepancy set of (state, event) pairs for round-off measurements.

States are uniform on the validity cap, events uniform on the sphere. The
Sobol sequence is scrambled with a fixed seed; an unscrambled sequence lines
up with dyadic cell boundaries and biases the round-off scaling.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.stats import qmc

from ontoqubit.domain.models.geometry import spherical_to_cartesian
from ontoqubit.domain.services.base_model import VALIDITY_ANGLE

EVALUATION_SET_VERSION = 1
EVALUATION_SET_LOG2_SIZE = 8
EVALUATION_SET_SEED = 20_240_417


@lru_cache(maxsize=1)
def evaluation_pairs() -> tuple[np.ndarray, np.ndarray]:
    """Return ``(states, events)``, each of shape ``(256, 3)``; arrays are read-only."""

    sampler = qmc.Sobol(d=4, scramble=True, seed=EVALUATION_SET_SEED)
    points = sampler.random_base2(m=EVALUATION_SET_LOG2_SIZE)
    cap = 1.0 - np.cos(VALIDITY_ANGLE)
    state_theta = np.arccos(1.0 - points[:, 0] * cap)
    state_phi = 2.0 * np.pi * points[:, 1]
    event_theta = np.arccos(1.0 - 2.0 * points[:, 2])
    event_phi = 2.0 * np.pi * points[:, 3]
    states = spherical_to_cartesian(state_theta, state_phi)
    events = spherical_to_cartesian(event_theta, event_phi)
    states.setflags(write=False)
    events.setflags(write=False)
    return states, events
