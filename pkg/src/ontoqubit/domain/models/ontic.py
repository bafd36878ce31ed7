"""Ontic states, two-point preparation distributions and inert context records."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping

from ontoqubit.domain.models.geometry import (
    GEOMETRY_TOLERANCE,
    TWO_PI,
    BlochVector,
    to_spherical,
)

PATCH_COUNT = 12
VALIDITY_ANGLE = math.acos(3.0 / 5.0)
TRANSFORMATION_GENERATORS = ("identity", "x", "y", "z")


class OutsideValidityConeError(ValueError):
    """Signal a preparation outside the cone ``theta <= arccos(3/5)``."""


@dataclass(frozen=True)
class OnticState:
    """Hidden-variable state: coordinate ``x``, branch ``n`` and optional patch ``m``.

    Branch 1 accepts ``x`` up to ``pi`` because the parametrized family uses
    that whole half-circle; the economical model itself only supports
    ``x <= arccos(3/5)`` and rejects larger coordinates when evaluating a
    response.
    """

    x: float
    n: int
    m: int | None = None

    def __post_init__(self) -> None:
        if self.n not in (0, 1):
            raise ValueError(f"Branch index must be 0 or 1, got {self.n!r}.")
        if not math.isfinite(self.x):
            raise ValueError("Ontic coordinate must be finite.")
        if self.n == 0 and not (0.0 <= self.x < TWO_PI):
            raise ValueError(f"Branch 0 coordinate {self.x!r} outside [0, 2 pi).")
        if self.n == 1 and not (0.0 <= self.x <= math.pi):
            raise ValueError(f"Branch 1 coordinate {self.x!r} outside [0, pi].")
        if self.m is not None and not (0 <= self.m < PATCH_COUNT):
            raise ValueError(f"Patch index {self.m!r} outside 0..{PATCH_COUNT - 1}.")

    def with_patch(self, m: int) -> "OnticState":
        return OnticState(x=self.x, n=self.n, m=m)

    def to_dict(self) -> dict[str, Any]:
        """Return the ``{x, n, m}`` JSON form; ``m`` is omitted for base states."""

        payload: dict[str, Any] = {"x": self.x, "n": self.n}
        if self.m is not None:
            payload["m"] = self.m
        return payload

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "OnticState":
        """Create an ontic state from its serialized representation."""

        if not isinstance(data, Mapping):
            raise ValueError("Ontic state data must be a mapping.")
        try:
            x = float(data["x"])
            n = int(data["n"])
        except (KeyError, TypeError, ValueError):
            raise ValueError("Ontic state requires numeric 'x' and integer 'n'.") from None
        m_raw = data.get("m")
        m = int(m_raw) if m_raw is not None else None
        return cls(x=x, n=n, m=m)


@dataclass(frozen=True)
class TwoPointDistribution:
    """Two delta peaks: ``weight0`` at ``point0`` on branch 0, ``weight1`` at ``point1`` on branch 1."""

    weight0: float
    point0: float
    weight1: float
    point1: float

    def __post_init__(self) -> None:
        for weight in (self.weight0, self.weight1):
            if not (0.0 <= weight <= 1.0):
                raise ValueError(f"Weight {weight!r} outside [0, 1].")
        if self.weight0 + self.weight1 != 1.0:
            raise ValueError("Branch weights must sum to one.")

    @classmethod
    def from_weight0(cls, weight0: float, point0: float, point1: float) -> "TwoPointDistribution":
        """Build the distribution from the branch-0 weight; branch 1 gets the complement."""

        weight0 = min(1.0, max(0.0, weight0))
        return cls(weight0=weight0, point0=point0, weight1=1.0 - weight0, point1=point1)

    def states(self) -> tuple[tuple[float, OnticState], tuple[float, OnticState]]:
        """Return ``(weight, state)`` for both peaks."""

        return (
            (self.weight0, OnticState(x=self.point0, n=0)),
            (self.weight1, OnticState(x=self.point1, n=1)),
        )


@dataclass(frozen=True)
class PreparationRecord:
    """Prepared state with an inert preparation-context tag.

    Only states inside the economical model's validity cone can be prepared.
    """

    v: BlochVector
    context_tag: str = ""

    def __post_init__(self) -> None:
        if not isinstance(self.v, BlochVector):
            raise TypeError("Prepared state must be a BlochVector.")
        zenith = to_spherical(self.v).theta
        if zenith > VALIDITY_ANGLE + GEOMETRY_TOLERANCE:
            raise OutsideValidityConeError(
                f"Prepared zenith {zenith:.9f} rad exceeds arccos(3/5) = {VALIDITY_ANGLE:.9f} rad."
            )


@dataclass(frozen=True)
class MeasurementRecord:
    """Measured event with an inert measurement-context tag."""

    w: BlochVector
    context_tag: str = ""

    def __post_init__(self) -> None:
        if not isinstance(self.w, BlochVector):
            raise TypeError("Measured event must be a BlochVector.")


@dataclass(frozen=True)
class TransformationRecord:
    """Unitary transformation label with an inert transformation-context tag.

    ``generator`` names the Pauli axis of ``exp(-i t sigma / 2)``; ``identity``
    leaves states untouched.
    """

    generator: str
    t: float
    context_tag: str = ""

    def __post_init__(self) -> None:
        if self.generator not in TRANSFORMATION_GENERATORS:
            raise ValueError(
                f"Unknown generator {self.generator!r}; expected one of {TRANSFORMATION_GENERATORS}."
            )
        if not math.isfinite(self.t):
            raise ValueError("Transformation time must be finite.")
