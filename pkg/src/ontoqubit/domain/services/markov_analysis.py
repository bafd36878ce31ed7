"""Bloch and Schrödinger flows, and kernel fits probing Markovian ontic dynamics.

A Markov model of the base model would need a stochastic kernel ``K`` with
``K rho_v = rho_{U v}`` for every prepared state. On a discretized ontic space
the best kernel is found by projected gradient descent; for rotations about
``z`` an exact permutation kernel exists, for rotations about ``y`` a residual
floor remains at every resolution.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm
from scipy.spatial.transform import Rotation

from ontoqubit.domain.models.geometry import (
    BlochVector,
    SphericalAngles,
    from_spherical,
    to_spherical,
)
from ontoqubit.domain.models.kernel import (
    DimensionMismatchError,
    KernelMatrix,
    OnticGrid,
    StateEnsemble,
)
from ontoqubit.domain.models.ontic import TransformationRecord
from ontoqubit.domain.models.operators import HermitianMatrix, StateVector
from ontoqubit.domain.services import base_model

logger = logging.getLogger(__name__)

FLOW_AXES: dict[str, np.ndarray | None] = {
    "identity": None,
    "x": np.array([1.0, 0.0, 0.0]),
    "y": np.array([0.0, 1.0, 0.0]),
    "z": np.array([0.0, 0.0, 1.0]),
}

ENSEMBLE_RESOLUTION = 16
ENSEMBLE_ZENITHS = 4
DEFAULT_FLOW_TIME = 2.0 * math.pi / ENSEMBLE_RESOLUTION
DEFAULT_SOLVER_BUDGET = 50_000
SOLVER_TOLERANCE = 1e-13


# ---------------------------------------------------------------------------
# Flows
# ---------------------------------------------------------------------------


def _flow_axis(generator: str) -> np.ndarray | None:
    try:
        return FLOW_AXES[generator]
    except KeyError:
        raise ValueError(
            f"Unknown generator {generator!r}; expected one of {sorted(FLOW_AXES)}."
        ) from None


def bloch_flow(generator: str, t: float, v: BlochVector) -> BlochVector:
    """Rotate ``v`` right-handedly by angle ``t`` about the generator axis.

    For ``y`` this integrates ``dv_x/dt = v_z``, ``dv_z/dt = -v_x``.
    """

    axis = _flow_axis(generator)
    if axis is None or t == 0.0:
        return v
    rotation = Rotation.from_rotvec(t * axis)
    return BlochVector.from_array(rotation.apply(v.as_array()))


def apply_transformation(record: TransformationRecord, v: BlochVector) -> BlochVector:
    return bloch_flow(record.generator, record.t, v)


def three_step_records(t: float) -> tuple[TransformationRecord, ...]:
    """Rotation about ``x`` as ``y(-pi/2)``, then ``z(t)``, then ``y(pi/2)``."""

    return (
        TransformationRecord("y", -math.pi / 2.0, context_tag="rotate-in"),
        TransformationRecord("z", t, context_tag="evolve"),
        TransformationRecord("y", math.pi / 2.0, context_tag="rotate-out"),
    )


def three_step_rotation(t: float, v: BlochVector) -> BlochVector:
    """Rotation about ``x`` built as ``y(pi/2) . z(t) . y(-pi/2)``."""

    for record in three_step_records(t):
        v = apply_transformation(record, v)
    return v


def flow_rates_spherical(v: BlochVector) -> tuple[float, float]:
    """``(d theta/dt, d phi/dt) = (cos phi, -cot theta sin phi)`` under the ``y`` flow."""

    angles = to_spherical(v)
    return math.cos(angles.phi), -math.sin(angles.phi) / math.tan(angles.theta)


def evolve_axis(hamiltonian, t: float, phi) -> np.ndarray:
    """Return ``exp(-i H t) phi`` for a Hermitian ``H``."""

    if not isinstance(hamiltonian, HermitianMatrix):
        hamiltonian = HermitianMatrix(hamiltonian)
    if not isinstance(phi, StateVector):
        phi = StateVector(phi)
    if hamiltonian.dimension != phi.dimension:
        raise DimensionMismatchError(
            f"Hamiltonian of size {hamiltonian.dimension} cannot act on a "
            f"{phi.dimension}-dimensional state."
        )
    return expm(-1j * t * hamiltonian.matrix) @ phi.amplitudes


def compose_kernels(first: KernelMatrix, second: KernelMatrix) -> KernelMatrix:
    """Chapman-Kolmogorov composition ``first @ second`` (``second`` acts first)."""

    if first.dimension != second.dimension:
        raise DimensionMismatchError(
            f"Cannot compose kernels of size {first.dimension} and {second.dimension}."
        )
    return KernelMatrix(first.matrix @ second.matrix)


# ---------------------------------------------------------------------------
# Discretization
# ---------------------------------------------------------------------------


def build_grid(g0: int, g1: int) -> OnticGrid:
    return OnticGrid(g0=g0, g1=g1, theta0=base_model.VALIDITY_ANGLE)


def snap(v: BlochVector, grid: OnticGrid) -> np.ndarray:
    """Two-delta distribution of ``v`` with both peaks moved to their nearest bins."""

    density = base_model.prepare_density(v)
    vector = np.zeros(grid.dimension)
    vector[grid.index0(density.point0)] += density.weight0
    vector[grid.index1(density.point1)] += density.weight1
    return vector


def ensemble_vectors(t: float = DEFAULT_FLOW_TIME) -> list[BlochVector]:
    """Product grid of cone states whose images under any flow of angle ``t`` stay in the cone.

    Zeniths come from the base-resolution branch-1 grid and azimuths from the
    base-resolution branch-0 grid, so the states are grid-aligned on every
    refinement that doubles the base resolution.
    """

    step1 = base_model.VALIDITY_ANGLE / ENSEMBLE_RESOLUTION
    highest = int(math.floor((base_model.VALIDITY_ANGLE - abs(t)) / step1))
    if highest < 1:
        raise ValueError(f"Flow time {t!r} leaves no room inside the cone.")
    indices = np.unique(np.round(np.linspace(1, highest, ENSEMBLE_ZENITHS)).astype(int))
    vectors = []
    for k in indices:
        for j in range(ENSEMBLE_RESOLUTION):
            vectors.append(
                from_spherical(
                    SphericalAngles(theta=k * step1, phi=j * 2.0 * math.pi / ENSEMBLE_RESOLUTION)
                )
            )
    return vectors


def build_ensemble(vectors: Sequence[BlochVector], grid: OnticGrid) -> StateEnsemble:
    return StateEnsemble(
        vectors=np.array([v.as_array() for v in vectors]),
        distributions=np.column_stack([snap(v, grid) for v in vectors]),
    )


# ---------------------------------------------------------------------------
# Kernel fitting
# ---------------------------------------------------------------------------


def project_columns_to_simplex(matrix: np.ndarray) -> np.ndarray:
    """Euclidean projection of every column onto the probability simplex."""

    size = matrix.shape[0]
    ordered = -np.sort(-matrix, axis=0)
    cumulative = np.cumsum(ordered, axis=0) - 1.0
    ranks = np.arange(1, size + 1)[:, None]
    support = ordered - cumulative / ranks > 0.0
    last = size - 1 - np.argmax(support[::-1], axis=0)
    threshold = cumulative[last, np.arange(matrix.shape[1])] / (last + 1)
    return np.maximum(matrix - threshold, 0.0)


@dataclass(frozen=True)
class KernelFit:
    """Best kernel found, its RMS residual and the solver's bookkeeping."""

    kernel: KernelMatrix
    residual: float
    iterations: int
    converged: bool


def _rms(kernel: np.ndarray, sources: np.ndarray, targets: np.ndarray) -> float:
    difference = kernel @ sources - targets
    return math.sqrt(float(np.sum(difference * difference)) / sources.shape[1])


def solve_stochastic_kernel(
    sources: np.ndarray,
    targets: np.ndarray,
    budget: int = DEFAULT_SOLVER_BUDGET,
    tolerance: float = SOLVER_TOLERANCE,
) -> KernelFit:
    """Minimize ``||K A - B||^2`` over column-stochastic ``K``.

    Accelerated projected gradient with momentum restart, started from the
    uniform stochastic matrix. Running out of budget is reported through
    ``converged=False`` together with the best kernel seen.
    """

    if sources.shape != targets.shape:
        raise DimensionMismatchError("Source and target ensembles differ in shape.")
    size = sources.shape[0]
    if np.array_equal(sources, targets):
        return KernelFit(KernelMatrix.identity(size), 0.0, 0, True)

    lipschitz = 2.0 * float(np.linalg.eigvalsh(sources @ sources.T)[-1])
    current = np.full((size, size), 1.0 / size)
    momentum_point = current
    momentum = 1.0
    best = current
    best_residual = _rms(current, sources, targets)
    current_residual = best_residual
    iterations = 0
    converged = best_residual < tolerance

    while not converged and iterations < budget:
        iterations += 1
        gradient = 2.0 * (momentum_point @ sources - targets) @ sources.T
        candidate = project_columns_to_simplex(momentum_point - gradient / lipschitz)
        residual = _rms(candidate, sources, targets)
        if residual < best_residual:
            best, best_residual = candidate, residual
        if residual < tolerance:
            converged = True
            break
        if residual > current_residual:
            momentum = 1.0
            momentum_point = candidate
        else:
            next_momentum = (1.0 + math.sqrt(1.0 + 4.0 * momentum * momentum)) / 2.0
            momentum_point = candidate + ((momentum - 1.0) / next_momentum) * (candidate - current)
            momentum = next_momentum
        current, current_residual = candidate, residual
        if iterations % 10_000 == 0:
            logger.debug("Kernel fit iteration %d: residual %.3e", iterations, best_residual)

    # re-project to absorb the round-off of the last projection
    return KernelFit(
        kernel=KernelMatrix(project_columns_to_simplex(best)),
        residual=best_residual,
        iterations=iterations,
        converged=converged,
    )


def fit_kernel(
    generator: str,
    t: float,
    ensemble: StateEnsemble,
    grid: OnticGrid,
    budget: int = DEFAULT_SOLVER_BUDGET,
) -> KernelFit:
    """Fit the kernel mapping each snapped state to the snapped image of its flow."""

    if ensemble.distributions.shape[0] != grid.dimension:
        raise DimensionMismatchError("Ensemble was snapped on a different grid.")
    targets = np.column_stack(
        [snap(bloch_flow(generator, t, BlochVector.from_array(v)), grid) for v in ensemble.vectors]
    )
    fit = solve_stochastic_kernel(ensemble.distributions, targets, budget=budget)
    logger.info(
        "Kernel fit for %s at G0=%d G1=%d: residual %.3e after %d iterations (converged=%s)",
        generator,
        grid.g0,
        grid.g1,
        fit.residual,
        fit.iterations,
        fit.converged,
    )
    return fit


@dataclass(frozen=True)
class GapRow:
    """One row of a residual table."""

    generator: str
    g0: int
    g1: int
    ensemble_size: int
    t: float
    residual: float
    iterations: int
    converged: bool

    def to_dict(self) -> dict[str, object]:
        return {
            "generator": self.generator,
            "G0": self.g0,
            "G1": self.g1,
            "ensemble_size": self.ensemble_size,
            "t": self.t,
            "residual": self.residual,
            "iterations": self.iterations,
        }


def _gap_row(generator: str, g0: int, g1: int, t: float, budget: int) -> GapRow:
    grid = build_grid(g0, g1)
    ensemble = build_ensemble(ensemble_vectors(t), grid)
    fit = fit_kernel(generator, t, ensemble, grid, budget=budget)
    return GapRow(
        generator=generator,
        g0=g0,
        g1=g1,
        ensemble_size=len(ensemble),
        t=t,
        residual=fit.residual,
        iterations=fit.iterations,
        converged=fit.converged,
    )


def markov_gap(
    generator: str,
    resolutions: Sequence[tuple[int, int]],
    t: float = DEFAULT_FLOW_TIME,
    budget: int = DEFAULT_SOLVER_BUDGET,
    threads: int = 1,
) -> list[GapRow]:
    """Residual of the best kernel at each ``(G0, G1)`` resolution, in input order."""

    _flow_axis(generator)
    sizes = [g0 + g1 for g0, g1 in resolutions]
    if any(later <= earlier for earlier, later in zip(sizes, sizes[1:])):
        raise ValueError("Resolutions must be strictly increasing.")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        futures = [
            executor.submit(_gap_row, generator, g0, g1, t, budget) for g0, g1 in resolutions
        ]
        return [future.result() for future in futures]
