"""Bloch-sphere primitives: unit vectors, spherical angles and rotations."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np
from scipy.spatial.transform import Rotation

GEOMETRY_TOLERANCE = 1e-12
RENORMALIZATION_TOLERANCE = 1e-9
TWO_PI = 2.0 * math.pi


class NonUnitVectorError(ValueError):
    """Signal a vector whose norm is too far from one to be renormalized."""


class AngleRangeError(ValueError):
    """Signal spherical angles outside ``[0, pi] x [0, 2 pi)``."""


@dataclass(frozen=True)
class BlochVector:
    """Unit 3-vector describing a pure qubit state or a rank-1 projective event.

    Inputs within ``1e-9`` of unit norm are renormalized; anything further
    away is rejected with :class:`NonUnitVectorError`.
    """

    vx: float
    vy: float
    vz: float

    def __post_init__(self) -> None:
        components = (float(self.vx), float(self.vy), float(self.vz))
        norm = math.sqrt(sum(value * value for value in components))
        if not math.isfinite(norm) or abs(norm - 1.0) > RENORMALIZATION_TOLERANCE:
            raise NonUnitVectorError(
                f"Bloch vector must have unit norm, got |v|={norm!r}."
            )
        object.__setattr__(self, "vx", components[0] / norm)
        object.__setattr__(self, "vy", components[1] / norm)
        object.__setattr__(self, "vz", components[2] / norm)

    @classmethod
    def from_array(cls, values: Any) -> "BlochVector":
        """Build a vector from any length-3 sequence or array."""

        array = np.asarray(values, dtype=float).reshape(-1)
        if array.shape != (3,):
            raise NonUnitVectorError("Bloch vector needs exactly three components.")
        return cls(float(array[0]), float(array[1]), float(array[2]))

    def as_array(self) -> np.ndarray:
        """Return the components as a numpy array."""

        return np.array([self.vx, self.vy, self.vz])

    def dot(self, other: "BlochVector") -> float:
        """Return the Euclidean inner product with ``other``."""

        return self.vx * other.vx + self.vy * other.vy + self.vz * other.vz

    def angle_to(self, other: "BlochVector") -> float:
        """Return the angular distance to ``other`` in radians."""

        cross = np.cross(self.as_array(), other.as_array())
        return math.atan2(float(np.linalg.norm(cross)), self.dot(other))

    def __neg__(self) -> "BlochVector":
        return BlochVector(-self.vx, -self.vy, -self.vz)

    def to_dict(self) -> dict[str, float]:
        """Return a JSON-serializable representation of the vector."""

        return {"vx": self.vx, "vy": self.vy, "vz": self.vz}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "BlochVector":
        """Create a vector from its serialized representation."""

        if not isinstance(data, Mapping):
            raise ValueError("Bloch vector data must be a mapping.")
        try:
            return cls(float(data["vx"]), float(data["vy"]), float(data["vz"]))
        except (KeyError, TypeError):
            raise ValueError("Bloch vector requires numeric vx, vy and vz.") from None


X_AXIS = BlochVector(1.0, 0.0, 0.0)
Y_AXIS = BlochVector(0.0, 1.0, 0.0)
Z_AXIS = BlochVector(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SphericalAngles:
    """Zenith ``theta`` in ``[0, pi]`` and azimuth ``phi`` in ``[0, 2 pi)``."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta <= math.pi):
            raise AngleRangeError(f"theta={self.theta!r} outside [0, pi].")
        if not (0.0 <= self.phi < TWO_PI):
            raise AngleRangeError(f"phi={self.phi!r} outside [0, 2 pi).")


@dataclass(frozen=True, eq=False)
class Rotation3:
    """Proper 3x3 rotation matrix."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=float)
        if matrix.shape != (3, 3):
            raise ValueError("Rotation matrix must be 3x3.")
        if np.max(np.abs(matrix.T @ matrix - np.eye(3))) > GEOMETRY_TOLERANCE:
            raise ValueError("Rotation matrix is not orthogonal.")
        if abs(np.linalg.det(matrix) - 1.0) > GEOMETRY_TOLERANCE:
            raise ValueError("Rotation matrix must have determinant +1.")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls) -> "Rotation3":
        return cls(np.eye(3))

    def apply(self, vector: BlochVector) -> BlochVector:
        """Rotate ``vector``."""

        return BlochVector.from_array(self.matrix @ vector.as_array())

    def apply_inverse(self, vector: BlochVector) -> BlochVector:
        """Rotate ``vector`` by the transpose (inverse) rotation."""

        return BlochVector.from_array(self.matrix.T @ vector.as_array())

    def inverse(self) -> "Rotation3":
        return Rotation3(self.matrix.T)

    def compose(self, other: "Rotation3") -> "Rotation3":
        """Return the rotation applying ``other`` first, then ``self``."""

        return Rotation3(self.matrix @ other.matrix)


def born_probability(w: BlochVector, v: BlochVector) -> float:
    """Return the quantum probability ``(1 + w.v) / 2`` of event ``w`` given ``v``."""

    return min(1.0, max(0.0, 0.5 * (1.0 + w.dot(v))))


def to_spherical(v: BlochVector) -> SphericalAngles:
    """Return the zenith and azimuth of ``v``; poles use the canonical ``phi = 0``."""

    rho = math.hypot(v.vx, v.vy)
    theta = math.atan2(rho, v.vz)
    if rho == 0.0:
        return SphericalAngles(theta=theta, phi=0.0)
    phi = math.atan2(v.vy, v.vx) % TWO_PI
    if phi >= TWO_PI:
        phi = 0.0
    return SphericalAngles(theta=theta, phi=phi)


def from_spherical(angles: SphericalAngles) -> BlochVector:
    """Return the unit vector with the given zenith and azimuth."""

    sin_theta = math.sin(angles.theta)
    return BlochVector(
        sin_theta * math.cos(angles.phi),
        sin_theta * math.sin(angles.phi),
        math.cos(angles.theta),
    )


def spherical_to_cartesian(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Vectorized ``from_spherical``; returns an array of shape ``(..., 3)``."""

    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    sin_theta = np.sin(theta)
    return np.stack(
        [sin_theta * np.cos(phi), sin_theta * np.sin(phi), np.cos(theta) + 0.0 * phi],
        axis=-1,
    )


def cartesian_to_spherical(vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``to_spherical`` for an array of shape ``(..., 3)``."""

    vectors = np.asarray(vectors, dtype=float)
    rho = np.hypot(vectors[..., 0], vectors[..., 1])
    theta = np.arctan2(rho, vectors[..., 2])
    phi = np.mod(np.arctan2(vectors[..., 1], vectors[..., 0]), TWO_PI)
    phi = np.where((rho == 0.0) | (phi >= TWO_PI), 0.0, phi)
    return theta, phi


def _perpendicular_axis(a: np.ndarray) -> np.ndarray:
    # the coordinate axis least aligned with ``a`` keeps the cross product well conditioned
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(a)))] = 1.0
    axis = np.cross(a, helper)
    return axis / np.linalg.norm(axis)


def rotation_taking(a: BlochVector, b: BlochVector) -> Rotation3:
    """Return the minimal rotation with ``R a = b``.

    Antiparallel inputs rotate by ``pi`` about a fixed perpendicular axis.
    """

    source = a.as_array()
    target = b.as_array()
    cross = np.cross(source, target)
    sine = float(np.linalg.norm(cross))
    cosine = float(np.dot(source, target))
    if sine < GEOMETRY_TOLERANCE:
        if cosine > 0.0:
            return Rotation3.identity()
        rotvec = math.pi * _perpendicular_axis(source)
    else:
        rotvec = math.atan2(sine, cosine) * cross / sine
    return Rotation3(Rotation.from_rotvec(rotvec).as_matrix())


GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def fibonacci_cap(count: int, max_zenith: float = math.pi) -> np.ndarray:
    """Near-uniform deterministic points on the cap ``theta <= max_zenith``; shape ``(count, 3)``."""

    if count < 1:
        raise ValueError("Point count must be positive.")
    index = np.arange(count) + 0.5
    cos_theta = 1.0 - index / count * (1.0 - math.cos(max_zenith))
    phi = np.mod(index * GOLDEN_ANGLE, TWO_PI)
    return spherical_to_cartesian(np.arccos(cos_theta), phi)


def random_cap(rng: np.random.Generator, count: int, max_zenith: float = math.pi) -> np.ndarray:
    """Uniformly distributed random points on the cap ``theta <= max_zenith``."""

    cos_theta = 1.0 - rng.random(count) * (1.0 - math.cos(max_zenith))
    phi = rng.random(count) * TWO_PI
    return spherical_to_cartesian(np.arccos(cos_theta), phi)
