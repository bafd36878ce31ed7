"""Discretized ontic space, stochastic kernels and snapped state ensembles."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

STOCHASTIC_TOLERANCE = 1e-9


class DimensionMismatchError(ValueError):
    """Signal operands whose dimensions do not conform."""


@dataclass(frozen=True)
class OnticGrid:
    """Uniform grids: ``g0`` points on ``[0, 2 pi)`` and ``g1`` points on ``[0, theta0)``.

    Branch-1 points are ``k * theta0 / g1`` so that doubling ``g1`` nests the grid.
    Vector index ``i < g0`` is branch 0, index ``g0 + k`` is branch 1.
    """

    g0: int
    g1: int
    theta0: float

    def __post_init__(self) -> None:
        if self.g0 < 1 or self.g1 < 1:
            raise ValueError("Grid sizes must be positive.")
        if not (0.0 < self.theta0 <= math.pi):
            raise ValueError("Branch-1 grid extent must lie in (0, pi].")

    @property
    def dimension(self) -> int:
        return self.g0 + self.g1

    @property
    def step0(self) -> float:
        return 2.0 * math.pi / self.g0

    @property
    def step1(self) -> float:
        return self.theta0 / self.g1

    def points0(self) -> np.ndarray:
        return np.arange(self.g0) * self.step0

    def points1(self) -> np.ndarray:
        return np.arange(self.g1) * self.step1

    def index0(self, phi: float) -> int:
        """Nearest branch-0 bin, with wrap-around."""

        return int(round(phi / self.step0)) % self.g0

    def index1(self, theta: float) -> int:
        """Nearest branch-1 bin, clamped to the grid."""

        return self.g0 + min(max(int(round(theta / self.step1)), 0), self.g1 - 1)


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Non-negative, column-stochastic transition matrix ``K[to, from]``."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError("Kernel matrices must be square.")
        if np.min(matrix, initial=0.0) < -STOCHASTIC_TOLERANCE:
            raise ValueError("Kernel entries must be non-negative.")
        if np.max(np.abs(matrix.sum(axis=0) - 1.0), initial=0.0) > STOCHASTIC_TOLERANCE:
            raise ValueError("Kernel columns must sum to one.")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, dimension: int) -> "KernelMatrix":
        return cls(np.eye(dimension))

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True, eq=False)
class StateEnsemble:
    """Bloch vectors and their snapped distributions (columns of ``distributions``)."""

    vectors: np.ndarray = field(repr=False)
    distributions: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        vectors = np.asarray(self.vectors, dtype=float)
        distributions = np.asarray(self.distributions, dtype=float)
        if vectors.ndim != 2 or vectors.shape[1] != 3:
            raise ValueError("Ensemble vectors must have shape (N, 3).")
        if distributions.ndim != 2 or distributions.shape[1] != vectors.shape[0]:
            raise DimensionMismatchError("One snapped distribution per ensemble vector is required.")
        if np.max(np.abs(distributions.sum(axis=0) - 1.0), initial=0.0) > STOCHASTIC_TOLERANCE:
            raise ValueError("Snapped distributions must sum to one.")
        if np.any(np.count_nonzero(distributions, axis=0) > 2):
            raise ValueError("Snapped distributions have at most two non-zero entries.")

    def __len__(self) -> int:
        return int(self.vectors.shape[0])
