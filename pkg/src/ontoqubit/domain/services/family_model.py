"""Two-parameter family of two-delta models and its consistency checks.

Both branches are parametrized by a coordinate (``x0`` on a circle, ``x1`` on
an open interval) with a 3-vector ``g`` and a positive scale ``k``. The state
is the weighted barycentre ``v = (g0 + g1) / (1/k0 + 1/k1)`` and the hidden
function ``H(w) = (s - Delta(w)) / 2`` ties the two branch responses to the
Born rule. Internally the inverse scales are used so that the ``s = 1``
equator, where ``k1`` is infinite, stays finite.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from ontoqubit.domain.models.family import (
    CoordinatePoleError,
    CoordPair,
    FourVector,
    ModelParams,
)
from ontoqubit.domain.models.geometry import (
    TWO_PI,
    BlochVector,
    born_probability,
    spherical_to_cartesian,
)
from ontoqubit.domain.services.base_model import (
    RESPONSE_TOLERANCE,
    ResponseValidityError,
    clean_probability,
)

logger = logging.getLogger(__name__)

POLE_TOLERANCE = 1e-12
REGION_POLE_COLLAR = 1e-6
REGION_REFINEMENT_STEPS = 40
SCALE_FLOOR = 1e-6

DEFAULT_EVENTS: tuple[tuple[float, float, float], ...] = (
    (1.0, 0.0, 0.0),
    (0.0, 1.0, 0.0),
    (0.0, 0.0, 1.0),
    (-1.0, 0.0, 0.0),
    (0.0, 0.0, -1.0),
    (1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0)),
    (0.6, -0.8, 0.0),
)


# ---------------------------------------------------------------------------
# Branch geometry (array friendly)
# ---------------------------------------------------------------------------


def g0(x0, params: ModelParams) -> np.ndarray:
    """Branch-0 vector ``(cos x0, sin x0 sin theta0, 0)``; shape ``(..., 3)``."""

    x0 = np.asarray(x0, dtype=float)
    return np.stack(
        [np.cos(x0), np.sin(x0) * params.sin_theta0, np.zeros_like(x0)], axis=-1
    )


def inverse_k0(x0, params: ModelParams):
    """``1/k0 = cos theta0 cos x0 + s``; non-negative for valid parameters."""

    return params.cos_theta0 * np.cos(x0) + params.s


def k0(x0: float, params: ModelParams) -> float:
    inverse = float(inverse_k0(x0, params))
    return math.inf if inverse == 0.0 else 1.0 / inverse


def _require_open_interval(x1) -> None:
    x1 = np.asarray(x1, dtype=float)
    if np.any((x1 <= 0.0) | (x1 >= math.pi)):
        raise CoordinatePoleError("Branch-1 coordinate must lie strictly inside (0, pi).")


def g1(x1, params: ModelParams) -> np.ndarray:
    """Branch-1 vector ``(cos theta0 csc x1, 0, cot x1 sin theta0)``; shape ``(..., 3)``."""

    _require_open_interval(x1)
    x1 = np.asarray(x1, dtype=float)
    sin_x1 = np.sin(x1)
    return np.stack(
        [
            params.cos_theta0 / sin_x1,
            np.zeros_like(x1),
            np.cos(x1) / sin_x1 * params.sin_theta0,
        ],
        axis=-1,
    )


def inverse_k1(x1, params: ModelParams):
    """``1/k1 = csc x1 - s``; zero only on the ``s = 1`` equator."""

    _require_open_interval(x1)
    return 1.0 / np.sin(x1) - params.s


def k1(x1: float, params: ModelParams) -> float:
    inverse = float(inverse_k1(x1, params))
    return math.inf if inverse == 0.0 else 1.0 / inverse


def raw_weights(x0, x1, theta0: float, s: float) -> tuple[np.ndarray, np.ndarray]:
    """Branch weights for arbitrary ``(theta0, s)``, without parameter validation."""

    cos_theta0 = math.cos(theta0)
    sin_x1 = np.sin(x1)
    denominator = 1.0 + cos_theta0 * np.cos(x0) * sin_x1
    r0 = sin_x1 * (s + cos_theta0 * np.cos(x0)) / denominator
    r1 = (1.0 - s * sin_x1) / denominator
    return r0, r1


def weights(coords: CoordPair, params: ModelParams) -> tuple[float, float]:
    """Return ``(r0, r1)``, the branch weights of the state at ``coords``.

    ``r1`` is formed as ``1 - r0`` so that the pair sums to one exactly.
    """

    r0, _ = raw_weights(coords.x0, coords.x1, params.theta0, params.s)
    r0 = float(r0)
    return r0, 1.0 - r0


# ---------------------------------------------------------------------------
# Coordinates
# ---------------------------------------------------------------------------


def coordinate_poles(params: ModelParams) -> tuple[BlochVector, BlochVector]:
    """The states where ``x0`` is undefined: ``(cos theta0, 0, +-sin theta0)``."""

    return (
        BlochVector(params.cos_theta0, 0.0, params.sin_theta0),
        BlochVector(params.cos_theta0, 0.0, -params.sin_theta0),
    )


def event_delta(vectors, params: ModelParams):
    """``Delta = sqrt((w_x - cos theta0)^2 + w_y^2 sin^2 theta0)`` for ``(..., 3)`` input."""

    vectors = np.asarray(vectors, dtype=float)
    return np.hypot(vectors[..., 0] - params.cos_theta0, vectors[..., 1] * params.sin_theta0)


def coords_to_vectors(x0, x1, params: ModelParams) -> np.ndarray:
    """Vectorized :func:`coord_to_bloch` returning raw ``(..., 3)`` arrays."""

    x0 = np.asarray(x0, dtype=float)
    x1 = np.asarray(x1, dtype=float)
    sin_x1 = np.sin(x1)
    ux = sin_x1 * np.cos(x0)
    uy = sin_x1 * np.sin(x0)
    uz = np.cos(x1)
    denominator = 1.0 + params.cos_theta0 * ux
    return np.stack(
        [
            (params.cos_theta0 + ux) / denominator,
            params.sin_theta0 * uy / denominator,
            params.sin_theta0 * uz / denominator,
        ],
        axis=-1,
    )


def vectors_to_coords(vectors, params: ModelParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized inverse map; returns ``(x0, x1, Delta)`` without pole checks."""

    vectors = np.asarray(vectors, dtype=float)
    delta = event_delta(vectors, params)
    x0 = np.mod(
        np.arctan2(vectors[..., 1] * params.sin_theta0, vectors[..., 0] - params.cos_theta0),
        TWO_PI,
    )
    x0 = np.where(x0 >= TWO_PI, 0.0, x0)
    x1 = np.arctan2(delta, vectors[..., 2] * params.sin_theta0)
    return x0, x1, delta


def coord_to_bloch(coords: CoordPair, params: ModelParams) -> BlochVector:
    """Return the state ``(g0 + g1) / (1/k0 + 1/k1)`` at ``coords``."""

    return BlochVector.from_array(coords_to_vectors(coords.x0, coords.x1, params))


def bloch_to_coord(v: BlochVector, params: ModelParams) -> CoordPair:
    """Invert :func:`coord_to_bloch`; the two coordinate poles are rejected."""

    x0, x1, delta = vectors_to_coords(v.as_array(), params)
    if float(delta) < POLE_TOLERANCE:
        raise CoordinatePoleError(
            f"State ({v.vx:.6f}, {v.vy:.6f}, {v.vz:.6f}) sits on a coordinate pole."
        )
    return CoordPair(x0=float(x0), x1=float(x1))


# ---------------------------------------------------------------------------
# Responses
# ---------------------------------------------------------------------------


def branch_zero_upper(wx, wy, wz, x, params: ModelParams):
    """Branch-0 response for events with ``w_z >= 0`` (array friendly)."""

    delta = np.hypot(wx - params.cos_theta0, wy * params.sin_theta0)
    numerator = (wx - params.cos_theta0) * np.cos(x) + wy * np.sin(x) * params.sin_theta0 - delta
    return 1.0 + numerator / (2.0 * (params.s + params.cos_theta0 * np.cos(x)))


def branch_one_upper(wx, wy, wz, x, params: ModelParams):
    """Branch-1 response for events with ``w_z >= 0`` (array friendly)."""

    delta = np.hypot(wx - params.cos_theta0, wy * params.sin_theta0)
    numerator = (
        (wx * params.cos_theta0 - 1.0)
        + wz * np.cos(x) * params.sin_theta0
        + delta * np.sin(x)
    )
    return 1.0 + numerator / (2.0 * (1.0 - params.s * np.sin(x)))


def _raw_upper(w: BlochVector, n: int, x: float, params: ModelParams) -> float:
    if n == 0:
        denominator = params.s + params.cos_theta0 * math.cos(x)
        if denominator <= 0.0:
            raise ResponseValidityError(f"Branch-0 response is singular at x={x!r}.")
        return float(branch_zero_upper(w.vx, w.vy, w.vz, x, params))
    if n == 1:
        _require_open_interval(x)
        if 1.0 - params.s * math.sin(x) <= 0.0:
            raise ResponseValidityError(f"Branch-1 response is singular at x={x!r}.")
        return float(branch_one_upper(w.vx, w.vy, w.vz, x, params))
    raise ValueError(f"Branch index must be 0 or 1, got {n!r}.")


def raw_response_family(w: BlochVector, n: int, x: float, params: ModelParams) -> float:
    """Unvalidated response, complement rule applied for ``w_z < 0``."""

    if w.vz < 0.0:
        return 1.0 - _raw_upper(-w, n, x, params)
    return _raw_upper(w, n, x, params)


def response_family(w: BlochVector, n: int, x: float, params: ModelParams) -> float:
    """Probability of event ``w`` given the ontic point ``x`` on branch ``n``."""

    return clean_probability(raw_response_family(w, n, x, params))


def response_from_hidden_function(w: BlochVector, n: int, x: float, params: ModelParams) -> float:
    """Same response written as ``k (w.g / 2 + s_n H(w)) + 1/2`` with ``H = (s - Delta)/2``.

    Only meaningful for ``w_z >= 0``; used to cross-check the closed form.
    """

    hidden = h_closed_form(w, params)
    if n == 0:
        scale = float(inverse_k0(x, params))
        return float((0.5 * np.dot(w.as_array(), g0(x, params)) + hidden) / scale + 0.5)
    scale = float(inverse_k1(x, params))
    return float((0.5 * np.dot(w.as_array(), g1(x, params)) - hidden) / scale + 0.5)


def outcome_probability_family(
    v: BlochVector, w: BlochVector, params: ModelParams, validate: bool = True
) -> float:
    """Combined probability ``r0 P0 + r1 P1``; zero-weight branches are skipped.

    With ``validate=False`` the raw responses are combined, which is how the
    Born identity is checked for events outside a sampled validity grid.
    """

    evaluate = response_family if validate else raw_response_family
    coords = bloch_to_coord(v, params)
    r0, r1 = weights(coords, params)
    total = 0.0
    if r0 > 0.0:
        total += r0 * evaluate(w, 0, coords.x0, params)
    if r1 > 0.0:
        total += r1 * evaluate(w, 1, coords.x1, params)
    return total


def born_check_family(
    v: BlochVector, w: BlochVector, params: ModelParams, validate: bool = True
) -> float:
    """Return ``|r0 P0 + r1 P1 - (1 + w.v)/2|``."""

    return abs(outcome_probability_family(v, w, params, validate) - born_probability(w, v))


# ---------------------------------------------------------------------------
# Hidden function
# ---------------------------------------------------------------------------


def h_closed_form(w: BlochVector, params: ModelParams) -> float:
    """``H(w) = (s - Delta(w)) / 2``."""

    return 0.5 * (params.s - float(event_delta(w.as_array(), params)))


def h_from_branch_zero(
    v: BlochVector, params: ModelParams, shift: Sequence[float] = (0.0, 0.0, 0.0)
) -> float:
    """``H = (1/k0 - v.(g0 + t)) / 2`` evaluated at the state's own ``x0``."""

    coords = bloch_to_coord(v, params)
    shifted = g0(coords.x0, params) + np.asarray(shift, dtype=float)
    return 0.5 * float(inverse_k0(coords.x0, params) - np.dot(v.as_array(), shifted))


def h_from_branch_one(
    v: BlochVector, params: ModelParams, shift: Sequence[float] = (0.0, 0.0, 0.0)
) -> float:
    """``H = -(1/k1 - v.(g1 - t)) / 2`` evaluated at the state's own ``x1``."""

    coords = bloch_to_coord(v, params)
    shifted = g1(coords.x1, params) - np.asarray(shift, dtype=float)
    return -0.5 * float(inverse_k1(coords.x1, params) - np.dot(v.as_array(), shifted))


# ---------------------------------------------------------------------------
# Consistency checks
# ---------------------------------------------------------------------------


def _mesh(x0_grid: Sequence[float], x1_grid: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    x0 = np.asarray(x0_grid, dtype=float).reshape(-1)
    x1 = np.asarray(x1_grid, dtype=float).reshape(-1)
    if x0.size == 0 or x1.size == 0:
        raise ValueError("Coordinate grids must not be empty.")
    return np.meshgrid(x0, x1, indexing="ij")


def branch_four_vectors(
    x0: float,
    x1: float,
    params: ModelParams,
    chi0: float | None = None,
    chi1: float | None = None,
    gamma0: Sequence[float] = (0.0, 0.0, 0.0),
    gamma1: Sequence[float] = (0.0, 0.0, 0.0),
) -> tuple[FourVector, FourVector]:
    """Return the branch four-vectors ``(g0 + gamma0, 1/k0 + chi0)`` and ``(g1 + gamma1, 1/k1 + chi1)``."""

    chi0 = -params.s if chi0 is None else chi0
    chi1 = params.s if chi1 is None else chi1
    alpha = FourVector(
        spatial=g0(x0, params) + np.asarray(gamma0, dtype=float),
        temporal=float(inverse_k0(x0, params)) + chi0,
    )
    beta = FourVector(
        spatial=g1(x1, params) + np.asarray(gamma1, dtype=float),
        temporal=float(inverse_k1(x1, params)) + chi1,
    )
    return alpha, beta


def verify_orthogonality(
    x0_grid: Sequence[float],
    x1_grid: Sequence[float],
    params: ModelParams,
    chi0: float | None = None,
    chi1: float | None = None,
    gamma0: Sequence[float] = (0.0, 0.0, 0.0),
    gamma1: Sequence[float] = (0.0, 0.0, 0.0),
) -> float:
    """Maximum Minkowski product of the branch four-vectors over the grid.

    With the default offsets ``chi0 = -s``, ``chi1 = +s`` and no spatial shift the
    two branches are Minkowski-orthogonal at every coordinate pair.
    """

    chi0 = -params.s if chi0 is None else chi0
    chi1 = params.s if chi1 is None else chi1
    grid0, grid1 = _mesh(x0_grid, x1_grid)
    alpha_space = g0(grid0, params) + np.asarray(gamma0, dtype=float)
    beta_space = g1(grid1, params) + np.asarray(gamma1, dtype=float)
    alpha_time = inverse_k0(grid0, params) + chi0
    beta_time = inverse_k1(grid1, params) + chi1
    products = np.sum(alpha_space * beta_space, axis=-1) - alpha_time * beta_time
    return float(np.max(np.abs(products)))


def verify_main_constraint(
    x0_grid: Sequence[float],
    x1_grid: Sequence[float],
    params: ModelParams,
    g0_fn: Callable[[np.ndarray, ModelParams], np.ndarray] = g0,
    g1_fn: Callable[[np.ndarray, ModelParams], np.ndarray] = g1,
) -> float:
    """Maximum of ``|(g0 + g1)^2 - (1/k0 + 1/k1)^2|`` over the grid.

    The branch vectors can be swapped out for negative controls.
    """

    grid0, grid1 = _mesh(x0_grid, x1_grid)
    total = g0_fn(grid0, params) + g1_fn(grid1, params)
    scale = inverse_k0(grid0, params) + inverse_k1(grid1, params)
    return float(np.max(np.abs(np.sum(total * total, axis=-1) - scale * scale)))


def verify_branch_constants(
    x0_grid: Sequence[float], x1_grid: Sequence[float], params: ModelParams
) -> tuple[float, float]:
    """Deviation of ``g0^2 - (1/k0 - s)^2`` from ``sin^2 theta0`` and of
    ``g1^2 - (1/k1 + s)^2`` from ``-sin^2 theta0``."""

    x0 = np.asarray(x0_grid, dtype=float).reshape(-1)
    x1 = np.asarray(x1_grid, dtype=float).reshape(-1)
    target = params.sin_theta0**2
    branch_zero = np.sum(g0(x0, params) ** 2, axis=-1) - (inverse_k0(x0, params) - params.s) ** 2
    branch_one = np.sum(g1(x1, params) ** 2, axis=-1) - (inverse_k1(x1, params) + params.s) ** 2
    return (
        float(np.max(np.abs(branch_zero - target))),
        float(np.max(np.abs(branch_one + target))),
    )


@dataclass(frozen=True)
class DetRCheck:
    """Determinant of the 4x4 response matrix and the null-vector residuals."""

    det: float
    left_null_residual: float
    source_residual: float


def response_matrix(x0: float, x1: float, y0: float, y1: float, params: ModelParams) -> np.ndarray:
    """Rows are the four coordinate pairs, columns the ontic points ``(x0, y0, x1, y1)``."""

    def pair(a: float, b: float) -> tuple[float, float]:
        r0, r1 = raw_weights(a, b, params.theta0, params.s)
        return float(r0), float(r1)

    r_xx = pair(x0, x1)
    r_xy = pair(x0, y1)
    r_yx = pair(y0, x1)
    r_yy = pair(y0, y1)
    return np.array(
        [
            [r_xx[0], 0.0, r_xx[1], 0.0],
            [r_xy[0], 0.0, 0.0, r_xy[1]],
            [0.0, r_yx[0], r_yx[1], 0.0],
            [0.0, r_yy[0], 0.0, r_yy[1]],
        ]
    )


def null_vector(x0: float, x1: float, y0: float, y1: float, params: ModelParams) -> np.ndarray:
    """Left null vector of :func:`response_matrix` built from the inverse scales."""

    a_x = float(inverse_k0(x0, params))
    a_y = float(inverse_k0(y0, params))
    b_x = float(inverse_k1(x1, params))
    b_y = float(inverse_k1(y1, params))
    return np.array([a_x + b_x, -(a_x + b_y), -(a_y + b_x), a_y + b_y])


def verify_detR_null(
    x0: float,
    x1: float,
    y0: float,
    y1: float,
    params: ModelParams,
    events: Iterable[BlochVector] | None = None,
) -> DetRCheck:
    """Check that the response matrix of a coordinate quadruple is singular.

    The null vector also annihilates the vector of Born probabilities of the
    four states for each event in ``events``.
    """

    matrix = response_matrix(x0, x1, y0, y1, params)
    u = null_vector(x0, x1, y0, y1, params)
    left_null = float(np.max(np.abs(u @ matrix)))

    states = coords_to_vectors(
        np.array([x0, x0, y0, y0]), np.array([x1, y1, x1, y1]), params
    )
    if events is None:
        events = [BlochVector(*values) for values in DEFAULT_EVENTS]
    source = 0.0
    for w in events:
        born = 0.5 * (1.0 + states @ w.as_array())
        source = max(source, float(abs(u @ born)))
    return DetRCheck(det=float(np.linalg.det(matrix)), left_null_residual=left_null, source_residual=source)


def verify_H_consistency(v_grid: Iterable[BlochVector] | np.ndarray, params: ModelParams) -> float:
    """Largest disagreement between the three expressions for ``H(v)``."""

    vectors = (
        np.asarray(v_grid, dtype=float)
        if isinstance(v_grid, np.ndarray)
        else np.array([v.as_array() for v in v_grid])
    ).reshape(-1, 3)
    x0, x1, delta = vectors_to_coords(vectors, params)
    if np.any(delta < POLE_TOLERANCE):
        raise CoordinatePoleError("H consistency grid contains a coordinate pole.")
    closed = 0.5 * (params.s - delta)
    from_zero = 0.5 * (inverse_k0(x0, params) - np.sum(vectors * g0(x0, params), axis=-1))
    from_one = -0.5 * (inverse_k1(x1, params) - np.sum(vectors * g1(x1, params), axis=-1))
    residual = np.maximum(np.abs(from_zero - closed), np.abs(from_one - closed))
    return float(np.max(residual))


def translation_invariance(
    shift: Sequence[float],
    coords: Iterable[CoordPair],
    events: Iterable[BlochVector],
    params: ModelParams,
    hidden: Callable[[BlochVector, ModelParams], float] | None = None,
) -> float:
    """Shift ``g0 -> g0 + t``, ``g1 -> g1 - t`` and check the model is unchanged.

    The state keeps its coordinates, so ``H`` recomputed from either shifted
    branch at the state itself must equal ``hidden(v) - v.t/2``. Responses built
    from the shifted branches and ``hidden(w) - w.t/2`` must equal the closed-form
    responses of the unshifted model. ``hidden`` defaults to :func:`h_closed_form`.
    Returns the largest deviation.
    """

    hidden = hidden or h_closed_form
    t = np.asarray(shift, dtype=float)
    event_list = [w if w.vz >= 0.0 else -w for w in events]
    worst = 0.0
    for pair in coords:
        v = coord_to_bloch(pair, params)
        expected = hidden(v, params) - 0.5 * float(v.as_array() @ t)
        worst = max(
            worst,
            abs(h_from_branch_zero(v, params, t) - expected),
            abs(h_from_branch_one(v, params, t) - expected),
        )
        a = float(inverse_k0(pair.x0, params))
        b = float(inverse_k1(pair.x1, params))
        shifted0 = g0(pair.x0, params) + t
        shifted1 = g1(pair.x1, params) - t
        for w in event_list:
            w_arr = w.as_array()
            hidden_shifted = hidden(w, params) - 0.5 * float(w_arr @ t)
            if a > SCALE_FLOOR:
                p0 = (0.5 * float(w_arr @ shifted0) + hidden_shifted) / a + 0.5
                worst = max(worst, abs(p0 - raw_response_family(w, 0, pair.x0, params)))
            if b > SCALE_FLOOR:
                p1 = (0.5 * float(w_arr @ shifted1) - hidden_shifted) / b + 0.5
                worst = max(worst, abs(p1 - raw_response_family(w, 1, pair.x1, params)))
    return worst


# ---------------------------------------------------------------------------
# Positivity region
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PositivityRegion:
    """Validity map over a ``(theta_v, phi_v)`` grid of states."""

    params: ModelParams
    theta_v: np.ndarray = field(repr=False)
    phi_v: np.ndarray = field(repr=False)
    valid: np.ndarray = field(repr=False)
    max_valid_zenith: float

    @property
    def valid_count(self) -> int:
        return int(np.count_nonzero(self.valid))

    @property
    def is_empty(self) -> bool:
        return self.valid_count == 0

    @property
    def zenith_step(self) -> float:
        """Spacing of the state zenith grid, the resolution of the recovered boundary."""

        return float(self.theta_v[1] - self.theta_v[0])

    def rows(self) -> list[dict[str, float | int]]:
        """Flatten the map into ``(theta0, s, theta_v, phi_v, valid_flag)`` rows."""

        rows: list[dict[str, float | int]] = []
        for i, theta in enumerate(self.theta_v):
            for j, phi in enumerate(self.phi_v):
                rows.append(
                    {
                        "theta0": self.params.theta0,
                        "s": self.params.s,
                        "theta_v": float(theta),
                        "phi_v": float(phi),
                        "valid_flag": int(self.valid[i, j]),
                    }
                )
        return rows


def _event_grid(resolution: int) -> np.ndarray:
    polar = np.linspace(0.0, math.pi / 2.0, resolution // 2 + 1)
    azimuth = np.linspace(0.0, TWO_PI, resolution, endpoint=False)
    polar_grid, azimuth_grid = np.meshgrid(polar, azimuth, indexing="ij")
    return spherical_to_cartesian(polar_grid, azimuth_grid).reshape(-1, 3)


def _valid_states(vectors: np.ndarray, events: np.ndarray, params: ModelParams) -> np.ndarray:
    """Validity flag of each state in ``vectors`` (shape ``(N, 3)``)."""

    x0, x1, delta = vectors_to_coords(vectors, params)
    with np.errstate(divide="ignore", invalid="ignore"):
        r0, r1 = raw_weights(x0, x1, params.theta0, params.s)
        wx = events[None, :, 0]
        wy = events[None, :, 1]
        wz = events[None, :, 2]
        p0 = branch_zero_upper(wx, wy, wz, x0[:, None], params)
        p1 = branch_one_upper(wx, wy, wz, x1[:, None], params)
        low = -RESPONSE_TOLERANCE
        high = 1.0 + RESPONSE_TOLERANCE
        responses_ok = np.all((p0 >= low) & (p0 <= high), axis=1) & np.all(
            (p1 >= low) & (p1 <= high), axis=1
        )
        weights_ok = (r0 >= low) & (r0 <= high) & (r1 >= low) & (r1 <= high)
    return (delta >= REGION_POLE_COLLAR) & weights_ok & responses_ok


def positivity_region(params: ModelParams, resolution: int = 48) -> PositivityRegion:
    """Map the states whose weights and responses are all valid probabilities.

    States are sampled on ``resolution`` zeniths by ``2 * resolution`` azimuths
    and tested against a grid of upper-hemisphere events (the complement rule
    covers the rest). A collar around the coordinate poles is excluded. The
    largest valid zenith per azimuth is refined by bisection.
    """

    if resolution < 4:
        raise ValueError("Region resolution must be at least 4.")
    theta_v = np.linspace(0.0, math.pi, resolution)
    phi_v = np.linspace(0.0, TWO_PI, 2 * resolution, endpoint=False)
    events = _event_grid(resolution)
    theta_grid, phi_grid = np.meshgrid(theta_v, phi_v, indexing="ij")
    states = spherical_to_cartesian(theta_grid, phi_grid).reshape(-1, 3)
    valid = _valid_states(states, events, params).reshape(theta_grid.shape)

    max_zenith = -math.inf
    for j, phi in enumerate(phi_v):
        column = np.flatnonzero(valid[:, j])
        if column.size == 0:
            continue
        last = int(column[-1])
        if last == resolution - 1:
            max_zenith = max(max_zenith, float(theta_v[last]))
            continue
        low, high = float(theta_v[last]), float(theta_v[last + 1])
        for _ in range(REGION_REFINEMENT_STEPS):
            middle = 0.5 * (low + high)
            midpoint = spherical_to_cartesian(np.array([middle]), np.array([phi]))
            if _valid_states(midpoint, events, params)[0]:
                low = middle
            else:
                high = middle
        max_zenith = max(max_zenith, low)

    region = PositivityRegion(
        params=params,
        theta_v=theta_v,
        phi_v=phi_v,
        valid=valid,
        max_valid_zenith=max_zenith if math.isfinite(max_zenith) else float("nan"),
    )
    logger.info(
        "Positivity region for theta0=%.6f s=%.6f: %d of %d grid states valid",
        params.theta0,
        params.s,
        region.valid_count,
        valid.size,
    )
    return region
