"""Full-sphere model: the base model copied onto twelve icosahedral patches.

The canonical orientation uses the golden-ratio vertex coordinates
``(0, +-1, +-phi)``, ``(+-1, +-phi, 0)`` and ``(+-phi, 0, +-1)``, normalized and
listed in that order. A state is assigned the smallest-index patch whose cone
contains it; the patch label then travels with the ontic state.
"""
from __future__ import annotations

import logging
import math
from functools import lru_cache

import numpy as np

from ontoqubit.domain.models.geometry import (
    GEOMETRY_TOLERANCE,
    Z_AXIS,
    BlochVector,
    born_probability,
    fibonacci_cap,
    rotation_taking,
)
from ontoqubit.domain.models.ontic import OnticState
from ontoqubit.domain.models.patch_atlas import PatchAtlas
from ontoqubit.domain.services import base_model

logger = logging.getLogger(__name__)

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0


def icosahedron_vertices() -> np.ndarray:
    """Return the twelve normalized vertices in canonical order."""

    phi = GOLDEN_RATIO
    vertices = []
    for a in (1.0, -1.0):
        for b in (phi, -phi):
            vertices.append((0.0, a, b))
    for a in (1.0, -1.0):
        for b in (phi, -phi):
            vertices.append((a, b, 0.0))
    for a in (phi, -phi):
        for b in (1.0, -1.0):
            vertices.append((a, 0.0, b))
    array = np.array(vertices)
    return array / np.linalg.norm(array, axis=1, keepdims=True)


@lru_cache(maxsize=1)
def build_atlas() -> PatchAtlas:
    """Build the icosahedral atlas with one rotation ``R_m`` per vertex, ``R_m z = a_m``."""

    axes = tuple(BlochVector.from_array(vertex) for vertex in icosahedron_vertices())
    rotations = tuple(rotation_taking(Z_AXIS, axis) for axis in axes)
    return PatchAtlas(axes=axes, rotations=rotations)


def covering_radius(atlas: PatchAtlas, samples: int = 10_000) -> float:
    """Largest angular distance from a Fibonacci-sphere sample to its nearest axis."""

    points = fibonacci_cap(samples)
    cosines = np.clip(points @ atlas.axis_matrix().T, -1.0, 1.0)
    return float(np.max(np.arccos(np.max(cosines, axis=1))))


def select_patch(v: BlochVector, atlas: PatchAtlas | None = None) -> int:
    """Return the smallest index whose axis lies within the validity angle of ``v``."""

    atlas = atlas or build_atlas()
    for index, axis in enumerate(atlas.axes):
        if axis.angle_to(v) <= base_model.VALIDITY_ANGLE + GEOMETRY_TOLERANCE:
            return index
    raise RuntimeError("Atlas does not cover the sphere.")


def to_patch_frame(v: BlochVector, m: int, atlas: PatchAtlas | None = None) -> BlochVector:
    """Express ``v`` in the frame of patch ``m`` (apply ``R_m^T``)."""

    atlas = atlas or build_atlas()
    return atlas.rotations[m].apply_inverse(v)


def prepare_density_full(v: BlochVector, atlas: PatchAtlas | None = None):
    """Return ``(m, distribution)`` for ``v``; the distribution lives in patch ``m``."""

    atlas = atlas or build_atlas()
    m = select_patch(v, atlas)
    return m, base_model.prepare_density(to_patch_frame(v, m, atlas))


def prepare_full(
    v: BlochVector, rng: np.random.Generator, atlas: PatchAtlas | None = None
) -> OnticState:
    """Draw a patch-labelled ontic state for ``v``."""

    atlas = atlas or build_atlas()
    m = select_patch(v, atlas)
    state = base_model.prepare_sample(to_patch_frame(v, m, atlas), rng)
    return state.with_patch(m)


def response_full(w: BlochVector, state: OnticState, atlas: PatchAtlas | None = None) -> float:
    """Base response of ``R_m^T w`` on the state's ``(x, n)``."""

    if state.m is None:
        raise ValueError("Full-sphere responses need a patch-labelled ontic state.")
    atlas = atlas or build_atlas()
    local = OnticState(x=state.x, n=state.n)
    return base_model.response(to_patch_frame(w, state.m, atlas), local)


def outcome_probability_full(
    v: BlochVector, w: BlochVector, atlas: PatchAtlas | None = None
) -> float:
    """Combined probability of ``w`` over the full-sphere preparation of ``v``."""

    atlas = atlas or build_atlas()
    m, density = prepare_density_full(v, atlas)
    return sum(
        weight * response_full(w, state.with_patch(m), atlas)
        for weight, state in density.states()
    )


def born_check_full(v: BlochVector, w: BlochVector, atlas: PatchAtlas | None = None) -> float:
    return abs(outcome_probability_full(v, w, atlas) - born_probability(w, v))


def orthogonal_exclusion(v: BlochVector, atlas: PatchAtlas | None = None) -> float:
    """Largest response to ``-v`` over the ontic points supporting ``v``."""

    atlas = atlas or build_atlas()
    m, density = prepare_density_full(v, atlas)
    opposite = -v
    return max(
        response_full(opposite, state.with_patch(m), atlas)
        for weight, state in density.states()
        if weight > 0.0
    )
