"""The economical one-dimensional qubit model.

A state ``v`` inside the validity cone is represented by two delta peaks on the
ontic space ``(x, n)``: weight ``sin(theta)`` at ``x = phi`` on branch 0 and
weight ``1 - sin(theta)`` at ``x = theta`` on branch 1.
"""
from __future__ import annotations

import logging
import math

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ontoqubit.domain.models.geometry import (
    GEOMETRY_TOLERANCE,
    BlochVector,
    born_probability,
    to_spherical,
)
from ontoqubit.domain.models.ontic import (
    VALIDITY_ANGLE,
    OnticState,
    OutsideValidityConeError,
    TwoPointDistribution,
)

logger = logging.getLogger(__name__)

RESPONSE_TOLERANCE = 1e-12
ROUNDOFF_SNAP = 1e-14


class ResponseValidityError(ValueError):
    """Signal an ontic state for which a response leaves ``[0, 1]``."""


def clean_probability(value: float) -> float:
    """Validate ``value`` as a probability, clipping round-off at both ends."""

    if not (-RESPONSE_TOLERANCE <= value <= 1.0 + RESPONSE_TOLERANCE):
        raise ResponseValidityError(f"Response {value!r} outside [0, 1].")
    if value < ROUNDOFF_SNAP:
        return 0.0
    if value > 1.0 - ROUNDOFF_SNAP:
        return 1.0
    return value


def in_validity_cone(v: BlochVector) -> bool:
    """Return ``True`` when the zenith of ``v`` does not exceed ``arccos(3/5)``."""

    return to_spherical(v).theta <= VALIDITY_ANGLE + GEOMETRY_TOLERANCE


def _require_cone(v: BlochVector) -> None:
    if not in_validity_cone(v):
        raise OutsideValidityConeError(
            f"State zenith {to_spherical(v).theta:.9f} rad exceeds the cone bound "
            f"arccos(3/5) = {VALIDITY_ANGLE:.9f} rad."
        )


def prepare_density(v: BlochVector) -> TwoPointDistribution:
    """Return the two-point distribution associated with ``v``."""

    _require_cone(v)
    angles = to_spherical(v)
    return TwoPointDistribution.from_weight0(
        math.sin(angles.theta), point0=angles.phi, point1=angles.theta
    )


def prepare_sample(v: BlochVector, rng: np.random.Generator) -> OnticState:
    """Draw one ontic state from the preparation distribution of ``v``."""

    density = prepare_density(v)
    if rng.random() < density.weight0:
        return OnticState(x=density.point0, n=0)
    return OnticState(x=density.point1, n=1)


def prepare_samples(
    v: BlochVector, rng: np.random.Generator, size: int
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`prepare_sample`; returns coordinate and branch arrays."""

    density = prepare_density(v)
    branch_zero = rng.random(size) < density.weight0
    x = np.where(branch_zero, density.point0, density.point1)
    n = np.where(branch_zero, 0, 1)
    return x, n


def branch_zero_upper(wx, wy, wz, x):
    """Branch-0 response for events with ``w_z >= 0`` (array friendly)."""

    rho = np.hypot(wx, wy)
    return 1.0 + (wx * np.cos(x) + wy * np.sin(x) - rho) / 2.0


def branch_one_upper(rho, wz, x):
    """Branch-1 response for events with ``w_z >= 0``; ``rho`` is the transverse norm of ``w``."""

    sin_x = np.sin(x)
    return 1.0 + (rho * sin_x + wz * np.cos(x) - 1.0) / (2.0 * (1.0 - sin_x))


def _raw_upper(w: BlochVector, state: OnticState) -> float:
    if state.n == 0:
        return float(branch_zero_upper(w.vx, w.vy, w.vz, state.x))
    if state.x > VALIDITY_ANGLE + RESPONSE_TOLERANCE:
        raise ResponseValidityError(
            f"Branch-1 coordinate {state.x:.9f} exceeds arccos(3/5)."
        )
    return float(branch_one_upper(math.hypot(w.vx, w.vy), w.vz, state.x))


def raw_response(w: BlochVector, state: OnticState) -> float:
    """Unvalidated response, complement rule applied for ``w_z < 0``."""

    if w.vz < 0.0:
        return 1.0 - _raw_upper(-w, state)
    return _raw_upper(w, state)


def response(w: BlochVector, state: OnticState) -> float:
    """Return the probability of event ``w`` given the ontic ``state``.

    Events with ``w_z < 0`` are the non-occurrence of ``-w``; equator events
    are evaluated directly.
    """

    return clean_probability(raw_response(w, state))


def sample_outcome(w: BlochVector, state: OnticState, rng: np.random.Generator) -> int:
    """Return ``+1`` (event ``w``) with probability ``response(w, state)``, else ``-1``."""

    return 1 if rng.random() < response(w, state) else -1


def outcome_probability(v: BlochVector, w: BlochVector) -> float:
    """Return the combined probability of ``w`` averaged over the preparation of ``v``."""

    density = prepare_density(v)
    return sum(weight * response(w, state) for weight, state in density.states())


def simulate_outcomes(
    v: BlochVector, w: BlochVector, rng: np.random.Generator, size: int
) -> np.ndarray:
    """Weak simulation: prepare ``size`` ontic states and sample one outcome each."""

    density = prepare_density(v)
    (_, state0), (_, state1) = density.states()
    p0 = response(w, state0)
    p1 = response(w, state1)
    x, n = prepare_samples(v, rng, size)
    probabilities = np.where(n == 0, p0, p1)
    return np.where(rng.random(size) < probabilities, 1, -1)


def born_check(v: BlochVector, w: BlochVector) -> float:
    """Return ``|sum_n weight_n response_n - born_probability(w, v)|``."""

    return abs(outcome_probability(v, w) - born_probability(w, v))


def min_branch_one_response(x: float, scan_points: int = 257) -> float:
    """Minimum of the branch-1 response over events with ``w_z >= 0``.

    The branch-1 response depends on ``w`` only through its polar angle, so a
    dense scan plus a bounded 1-D refinement around the best sample is exact
    enough; the endpoints are part of the scan.
    """

    polar = np.linspace(0.0, math.pi / 2.0, scan_points)
    values = branch_one_upper(np.sin(polar), np.cos(polar), x)
    best = int(np.argmin(values))
    low = polar[max(best - 1, 0)]
    high = polar[min(best + 1, scan_points - 1)]
    refined = minimize_scalar(
        lambda a: float(branch_one_upper(math.sin(a), math.cos(a), x)),
        bounds=(low, high),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(min(values[best], refined.fun))


def validity_boundary() -> float:
    """Numerically locate the largest branch-1 coordinate with non-negative responses."""

    boundary = brentq(
        min_branch_one_response, math.pi / 4.0, math.pi / 2.0 - 1e-3, xtol=1e-14
    )
    logger.debug("Validity boundary located at %.12f rad", boundary)
    return float(boundary)
