"""Atlas of rotated copies of the base model covering the whole sphere."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ontoqubit.domain.models.geometry import Z_AXIS, BlochVector, Rotation3
from ontoqubit.domain.models.ontic import PATCH_COUNT

ATLAS_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PatchAtlas:
    """Patch axes and the rotations taking the north pole onto each of them."""

    axes: tuple[BlochVector, ...]
    rotations: tuple[Rotation3, ...]

    def __post_init__(self) -> None:
        if len(self.axes) != PATCH_COUNT or len(self.rotations) != PATCH_COUNT:
            raise ValueError(f"An atlas needs exactly {PATCH_COUNT} axes and rotations.")
        for index, (axis, rotation) in enumerate(zip(self.axes, self.rotations)):
            image = rotation.matrix @ Z_AXIS.as_array()
            if np.max(np.abs(image - axis.as_array())) > ATLAS_TOLERANCE:
                raise ValueError(f"Rotation {index} does not map the north pole onto its axis.")

    def axis_matrix(self) -> np.ndarray:
        """Return the axes stacked as a ``(12, 3)`` array."""

        return np.array([axis.as_array() for axis in self.axes])
