"""Parameters and coordinates of the two-parameter family of two-delta models."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from ontoqubit.domain.models.geometry import TWO_PI


class InvalidModelParamsError(ValueError):
    """Signal parameters violating ``|cos theta0| <= s <= 1`` or ``0 < theta0 <= pi/2``."""


class CoordinatePoleError(ValueError):
    """Signal a coordinate at (or a state mapping to) one of the two coordinate poles."""


PARAMETER_TOLERANCE = 1e-15


@dataclass(frozen=True)
class ModelParams:
    """Family parameters; ``theta0 = pi/2, s = 1`` is the economical model."""

    theta0: float
    s: float

    def __post_init__(self) -> None:
        if not (0.0 < self.theta0 <= math.pi / 2.0 + PARAMETER_TOLERANCE):
            raise InvalidModelParamsError(
                f"theta0={self.theta0!r} must lie in (0, pi/2]."
            )
        if not (abs(math.cos(self.theta0)) - PARAMETER_TOLERANCE <= self.s <= 1.0):
            raise InvalidModelParamsError(
                f"s={self.s!r} must satisfy |cos theta0| <= s <= 1 "
                f"(|cos theta0|={abs(math.cos(self.theta0)):.6f})."
            )

    @classmethod
    def economical(cls) -> "ModelParams":
        return cls(theta0=math.pi / 2.0, s=1.0)

    @property
    def cos_theta0(self) -> float:
        return math.cos(self.theta0)

    @property
    def sin_theta0(self) -> float:
        return math.sin(self.theta0)

    def to_dict(self) -> dict[str, float]:
        return {"theta0": self.theta0, "s": self.s}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ModelParams":
        if not isinstance(data, Mapping):
            raise InvalidModelParamsError("Model parameters must be a mapping.")
        try:
            return cls(theta0=float(data["theta0"]), s=float(data["s"]))
        except (KeyError, TypeError):
            raise InvalidModelParamsError("Model parameters need theta0 and s.") from None


@dataclass(frozen=True)
class CoordPair:
    """Coordinates ``x0`` in ``[0, 2 pi)`` and ``x1`` in ``(0, pi)`` of a state."""

    x0: float
    x1: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.x0 < TWO_PI):
            raise ValueError(f"x0={self.x0!r} outside [0, 2 pi).")
        if not (0.0 < self.x1 < math.pi):
            raise CoordinatePoleError(f"x1={self.x1!r} is not strictly inside (0, pi).")


@dataclass(frozen=True, eq=False)
class FourVector:
    """Spatial 3-vector plus temporal component, contracted with signature (+,+,+,-)."""

    spatial: np.ndarray
    temporal: float

    def minkowski(self, other: "FourVector") -> float:
        return float(np.dot(self.spatial, other.spatial) - self.temporal * other.temporal)
