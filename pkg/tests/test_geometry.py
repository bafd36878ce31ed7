"""Tests for Bloch vectors, spherical angles and rotations."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis.strategies import floats

from ontoqubit.domain.models.geometry import (
    X_AXIS,
    Z_AXIS,
    AngleRangeError,
    BlochVector,
    NonUnitVectorError,
    SphericalAngles,
    born_probability,
    cartesian_to_spherical,
    fibonacci_cap,
    from_spherical,
    random_cap,
    rotation_taking,
    to_spherical,
)


def test_near_unit_vectors_are_renormalized() -> None:
    """Inputs within 1e-9 of unit norm are accepted and normalized."""

    vector = BlochVector(0.0, 0.0, 1.0 + 5e-10)

    assert vector.vz == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("components", [(0.0, 0.0, 1.1), (0.0, 0.0, 0.0), (math.nan, 0.0, 1.0)])
def test_non_unit_vectors_are_rejected(components) -> None:
    """Vectors away from the unit sphere raise NonUnitVectorError."""

    with pytest.raises(NonUnitVectorError):
        BlochVector(*components)


def test_vector_round_trips_through_dict() -> None:
    """Serialization preserves the components."""

    vector = from_spherical(SphericalAngles(theta=0.7, phi=2.1))

    assert BlochVector.from_dict(vector.to_dict()) == vector


@pytest.mark.parametrize("theta, phi", [(-0.1, 0.0), (math.pi + 0.1, 0.0), (0.5, 2 * math.pi)])
def test_spherical_angles_range(theta: float, phi: float) -> None:
    """Angles outside [0, pi] x [0, 2 pi) are rejected."""

    with pytest.raises(AngleRangeError):
        SphericalAngles(theta=theta, phi=phi)


def test_poles_use_zero_azimuth() -> None:
    """The azimuth of a pole is canonically zero."""

    assert to_spherical(Z_AXIS) == SphericalAngles(theta=0.0, phi=0.0)
    assert to_spherical(-Z_AXIS).phi == 0.0


@given(
    floats(min_value=1e-3, max_value=math.pi - 1e-3),
    floats(min_value=0.0, max_value=2 * math.pi - 1e-3),
)
def test_spherical_round_trip(theta: float, phi: float) -> None:
    """to_spherical inverts from_spherical away from the poles."""

    angles = to_spherical(from_spherical(SphericalAngles(theta=theta, phi=phi)))

    assert angles.theta == pytest.approx(theta, abs=1e-12)
    assert angles.phi == pytest.approx(phi, abs=1e-12)


def test_vectorized_spherical_agrees_with_scalar() -> None:
    """The array conversion matches the scalar one."""

    points = fibonacci_cap(50)
    theta, phi = cartesian_to_spherical(points)

    for point, t, p in zip(points, theta, phi):
        angles = to_spherical(BlochVector.from_array(point))
        assert t == pytest.approx(angles.theta, abs=1e-12)
        assert p == pytest.approx(angles.phi, abs=1e-12)


def test_born_probability_of_orthogonal_and_equal_states() -> None:
    """Equal states give one and antipodal states give zero."""

    assert born_probability(X_AXIS, X_AXIS) == 1.0
    assert born_probability(-X_AXIS, X_AXIS) == 0.0
    assert born_probability(Z_AXIS, X_AXIS) == pytest.approx(0.5)


@pytest.mark.parametrize(
    "target",
    [(0.0, 0.0, 1.0), (0.0, 0.0, -1.0), (0.3, -0.4, math.sqrt(0.75)), (1.0, 0.0, 0.0)],
)
def test_rotation_taking_maps_source_to_target(target) -> None:
    """rotation_taking(a, b) applied to a gives b, including the antiparallel case."""

    b = BlochVector(*target)
    rotation = rotation_taking(Z_AXIS, b)

    assert np.allclose(rotation.apply(Z_AXIS).as_array(), b.as_array(), atol=1e-12)
    assert np.allclose(rotation.apply_inverse(b).as_array(), Z_AXIS.as_array(), atol=1e-12)


def test_fibonacci_cap_stays_inside_the_cap() -> None:
    """Deterministic cap points are unit vectors below the requested zenith."""

    points = fibonacci_cap(200, max_zenith=0.9)

    assert points.shape == (200, 3)
    assert np.allclose(np.linalg.norm(points, axis=1), 1.0)
    assert np.all(np.arccos(np.clip(points[:, 2], -1.0, 1.0)) < 0.9)


def test_random_cap_is_reproducible() -> None:
    """The same generator seed yields the same points."""

    first = random_cap(np.random.default_rng(3), 10, 0.5)
    second = random_cap(np.random.default_rng(3), 10, 0.5)

    assert np.array_equal(first, second)
    assert np.all(first[:, 2] >= math.cos(0.5))
