"""Information cost of discretizing the ontic space.

The error model is ``sqrt(sum_i (g_i / n_i)^2)`` with ``sum_i ln n_i = I``; its
Lagrange solution gives the closed-form allocation and scaling law below.
Information is measured in nats.
"""
from __future__ import annotations

import logging
import math
from typing import Protocol, Sequence

import numpy as np

from ontoqubit.domain.models.allocation import AllocationPlan, NonPositiveGradientError
from ontoqubit.domain.models.family import ModelParams
from ontoqubit.domain.models.geometry import TWO_PI, cartesian_to_spherical
from ontoqubit.domain.services import base_model, family_model
from ontoqubit.domain.services.evaluation_set import evaluation_pairs

logger = logging.getLogger(__name__)

MIN_ROUNDOFF_CELLS = 8
GRADIENT_STEP = 1e-6


def _validated_gradients(g: Sequence[float]) -> tuple[float, ...]:
    values = tuple(float(value) for value in g)
    if not values:
        raise NonPositiveGradientError("At least one gradient magnitude is required.")
    if any(not (value > 0.0) or not math.isfinite(value) for value in values):
        raise NonPositiveGradientError(f"Gradient magnitudes must be positive, got {values}.")
    return values


def geometric_mean(g: Sequence[float]) -> float:
    values = _validated_gradients(g)
    return math.exp(sum(math.log(value) for value in values) / len(values))


def error_model(g: Sequence[float], n: Sequence[float]) -> float:
    """Round-off error ``sqrt(sum (g_i / n_i)^2)`` of an allocation."""

    values = _validated_gradients(g)
    if len(values) != len(n):
        raise ValueError("Gradients and grid counts differ in length.")
    return math.sqrt(sum((gi / ni) ** 2 for gi, ni in zip(values, n)))


def predicted_error(g: Sequence[float], information: float) -> float:
    """``g_bar * sqrt(M) * exp(-I / M)``."""

    values = _validated_gradients(g)
    m = len(values)
    return geometric_mean(values) * math.sqrt(m) * math.exp(-information / m)


def optimal_allocation(g: Sequence[float], information: float) -> AllocationPlan:
    """Closed-form optimum ``n_i = g_i exp(I / M) / g_bar``."""

    values = _validated_gradients(g)
    m = len(values)
    g_bar = geometric_mean(values)
    scale = math.exp(information / m)
    counts = tuple(value * scale / g_bar for value in values)
    return AllocationPlan(
        m=m,
        g=values,
        information=float(information),
        n=counts,
        delta_e=predicted_error(values, information),
    )


def required_information(g: Sequence[float] | float, m: int, delta_e: float) -> float:
    """Budget reaching error ``delta_e``: ``M ln(sqrt(M) g_bar / delta_e)``.

    ``g`` is either the geometric-mean gradient or the full gradient list.
    """

    if m < 1:
        raise ValueError("Dimension count M must be at least one.")
    if not (delta_e > 0.0):
        raise ValueError("Target error must be positive.")
    if isinstance(g, (int, float)):
        g_bar = geometric_mean([g])
    else:
        if len(g) != m:
            raise ValueError("Gradient list length must equal M.")
        g_bar = geometric_mean(g)
    return m * math.log(math.sqrt(m) * g_bar / delta_e)


def exhaustive_allocation(
    g: Sequence[float], max_product: int, max_count: int | None = None
) -> tuple[tuple[int, ...], float]:
    """Best integer counts with ``prod n_i <= max_product`` by brute force."""

    values = _validated_gradients(g)
    if max_product < 1:
        raise ValueError("Product bound must be at least one.")
    upper = max_product if max_count is None else min(max_count, max_product)
    axis = np.arange(1, upper + 1, dtype=float)
    grids = np.meshgrid(*([axis] * len(values)), indexing="ij")
    product = np.ones_like(grids[0])
    objective = np.zeros_like(grids[0])
    for value, grid in zip(values, grids):
        product = product * grid
        objective = objective + (value / grid) ** 2
    objective = np.where(product <= max_product, objective, np.inf)
    index = np.unravel_index(int(np.argmin(objective)), objective.shape)
    counts = tuple(int(grid[index]) for grid in grids)
    return counts, math.sqrt(float(objective[index]))


def information_product_bound(information: float) -> int:
    """Largest integer product of grid counts affordable with ``information`` nats."""

    return int(math.floor(math.exp(information) + 1e-9))


# ---------------------------------------------------------------------------
# Empirical round-off
# ---------------------------------------------------------------------------


class RoundoffModel(Protocol):
    """Two-branch model exposing its ontic coordinates and responses as arrays."""

    name: str

    def branch_domain(self, n: int) -> tuple[float, float]: ...

    def branch_points(self, states: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Return ``(r0, x0, r1, x1)`` for states of shape ``(K, 3)``."""
        ...

    def branch_response(self, events: np.ndarray, n: int, x: np.ndarray) -> np.ndarray: ...


def _with_complement(events: np.ndarray, upper) -> np.ndarray:
    lower = events[:, 2] < 0.0
    flipped = np.where(lower[:, None], -events, events)
    values = upper(flipped[:, 0], flipped[:, 1], flipped[:, 2])
    return np.where(lower, 1.0 - values, values)


class BaseRoundoffModel:
    """The economical model on ``[0, 2 pi) x {0} u [0, theta0] x {1}``."""

    name = "base"

    def branch_domain(self, n: int) -> tuple[float, float]:
        return (0.0, TWO_PI) if n == 0 else (0.0, base_model.VALIDITY_ANGLE)

    def branch_points(self, states):
        theta, phi = cartesian_to_spherical(states)
        weight0 = np.sin(theta)
        return weight0, phi, 1.0 - weight0, theta

    def branch_response(self, events, n, x):
        if n == 0:
            return _with_complement(
                events, lambda wx, wy, wz: base_model.branch_zero_upper(wx, wy, wz, x)
            )
        return _with_complement(
            events,
            lambda wx, wy, wz: base_model.branch_one_upper(np.hypot(wx, wy), wz, x),
        )


class FamilyRoundoffModel:
    """A family member on ``[0, 2 pi) x {0} u (0, pi) x {1}``."""

    name = "family"

    def __init__(self, params: ModelParams | None = None) -> None:
        self.params = params or ModelParams.economical()

    def branch_domain(self, n: int) -> tuple[float, float]:
        return (0.0, TWO_PI) if n == 0 else (0.0, math.pi)

    def branch_points(self, states):
        x0, x1, _ = family_model.vectors_to_coords(states, self.params)
        r0, r1 = family_model.raw_weights(x0, x1, self.params.theta0, self.params.s)
        return r0, x0, r1, x1

    def branch_response(self, events, n, x):
        upper = family_model.branch_zero_upper if n == 0 else family_model.branch_one_upper
        return _with_complement(events, lambda wx, wy, wz: upper(wx, wy, wz, x, self.params))


def model_for(name: str, params: ModelParams | None = None) -> RoundoffModel:
    if name == "base":
        return BaseRoundoffModel()
    if name == "family":
        return FamilyRoundoffModel(params)
    raise ValueError(f"Unknown model {name!r}; expected 'base' or 'family'.")


def cell_centers(x: np.ndarray, domain: tuple[float, float], cells: int) -> np.ndarray:
    """Replace each coordinate by the centre of its cell in a uniform partition."""

    low, high = domain
    width = (high - low) / cells
    index = np.clip(np.floor((x - low) / width), 0, cells - 1)
    return low + (index + 0.5) * width


def combined_probability(
    model: RoundoffModel, states: np.ndarray, events: np.ndarray, cells: int | None = None
) -> np.ndarray:
    """``r0 P0 + r1 P1`` per pair, optionally with coordinates moved to cell centres."""

    r0, x0, r1, x1 = model.branch_points(states)
    if cells is not None:
        x0 = cell_centers(x0, model.branch_domain(0), cells)
        x1 = cell_centers(x1, model.branch_domain(1), cells)
    with np.errstate(divide="ignore", invalid="ignore"):
        p0 = np.where(r0 > 0.0, model.branch_response(events, 0, x0), 0.0)
        p1 = np.where(r1 > 0.0, model.branch_response(events, 1, x1), 0.0)
    return r0 * p0 + r1 * p1


def empirical_roundoff(model: RoundoffModel | str, cells: int) -> float:
    """RMS deviation from the Born rule after snapping ontic coordinates to ``cells`` cells."""

    if cells < MIN_ROUNDOFF_CELLS:
        raise ValueError(f"At least {MIN_ROUNDOFF_CELLS} cells are required.")
    if isinstance(model, str):
        model = model_for(model)
    states, events = evaluation_pairs()
    born = 0.5 * (1.0 + np.sum(states * events, axis=1))
    measured = combined_probability(model, states, events, cells)
    return float(np.sqrt(np.mean((measured - born) ** 2)))


def mean_gradient(model: RoundoffModel | str, dimension: int, step: float = GRADIENT_STEP) -> float:
    """Mean ``|dP_n/dx|`` over the evaluation set, by central differences."""

    if dimension not in (0, 1):
        raise ValueError("Ontic dimension index must be 0 or 1.")
    if isinstance(model, str):
        model = model_for(model)
    states, events = evaluation_pairs()
    _, x0, _, x1 = model.branch_points(states)
    x = x0 if dimension == 0 else x1
    low, high = model.branch_domain(dimension)
    x = np.clip(x, low + step, high - step)
    forward = model.branch_response(events, dimension, x + step)
    backward = model.branch_response(events, dimension, x - step)
    return float(np.mean(np.abs(forward - backward) / (2.0 * step)))


def roundoff_scaling(
    model: RoundoffModel | str, cell_counts: Sequence[int]
) -> tuple[list[float], float]:
    """Measured errors for each cell count and the fitted log-log slope."""

    if isinstance(model, str):
        model = model_for(model)
    errors = [empirical_roundoff(model, cells) for cells in cell_counts]
    slope = float(np.polyfit(np.log(np.asarray(cell_counts, dtype=float)), np.log(errors), 1)[0])
    logger.info("Round-off slope for %s model: %.4f", model.name, slope)
    return errors, slope

