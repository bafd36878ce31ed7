"""Lie-algebraic checks for two-qubit generators and the dimension-counting bound."""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize_scalar

from ontoqubit.domain.models.operators import (
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    HermitianMatrix,
    StateVector,
)

logger = logging.getLogger(__name__)

RANK_TOLERANCE = 1e-9
FIDELITY_TARGET = 1e-12
ANGLE_GRID_POINTS = 64
MIN_STEP_ANGLE = 1e-12
DEFAULT_ORBIT_BUDGET = 200

_SINGLE_QUBIT = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}


def _as_matrix(generator) -> np.ndarray:
    if isinstance(generator, HermitianMatrix):
        return generator.matrix
    return HermitianMatrix(generator).matrix


def pauli_word(label: str) -> HermitianMatrix:
    """Tensor product of single-qubit Paulis, e.g. ``"XY"`` for ``X (x) Y``."""

    matrix = np.ones((1, 1), dtype=complex)
    for letter in label:
        matrix = np.kron(matrix, _SINGLE_QUBIT[letter])
    return HermitianMatrix(matrix, label=label)


def pauli_products(n_qubits: int = 2) -> list[HermitianMatrix]:
    """All ``4**n - 1`` non-identity Pauli products on ``n_qubits`` qubits."""

    if n_qubits < 1:
        raise ValueError("At least one qubit is required.")
    labels = ("".join(word) for word in itertools.product("IXYZ", repeat=n_qubits))
    return [pauli_word(label) for label in labels if set(label) != {"I"}]


def sp2_generators() -> list[HermitianMatrix]:
    """The ten generators ``s_i (x) 1``, ``s_i (x) s_x``, ``s_i (x) s_y`` and ``1 (x) s_z``."""

    labels = [f"{p}I" for p in "XYZ"] + [f"{p}X" for p in "XYZ"] + [f"{p}Y" for p in "XYZ"]
    return [pauli_word(label) for label in labels + ["IZ"]]


def trace_inner_product(a: np.ndarray, b: np.ndarray) -> float:
    """Normalized Hilbert-Schmidt product ``Re tr(a^dagger b) / d``."""

    return float(np.real(np.trace(a.conj().T @ b))) / a.shape[0]


def hermitian_basis(
    matrices: Iterable[np.ndarray], tolerance: float = RANK_TOLERANCE, basis: Sequence[np.ndarray] = ()
) -> list[np.ndarray]:
    """Gram-Schmidt the Hermitian ``matrices`` against an orthonormal ``basis``."""

    result = list(basis)
    for matrix in matrices:
        residual = np.array(matrix, dtype=complex)
        for element in result:
            residual = residual - trace_inner_product(element, residual) * element
        norm = math.sqrt(max(trace_inner_product(residual, residual), 0.0))
        if norm > tolerance:
            result.append(residual / norm)
    return result


def span_dimension(generators: Iterable) -> int:
    """Real dimension of the span of the generators."""

    return len(hermitian_basis(_as_matrix(g) for g in generators))


def lie_closure(generators: Iterable, tolerance: float = RANK_TOLERANCE, max_depth: int = 100) -> list[np.ndarray]:
    """Orthonormal basis of the real Lie algebra generated under ``i[A, B]``.

    Each round commutes the newly added elements with the original
    generators until no new direction appears.
    """

    originals = hermitian_basis((_as_matrix(g) for g in generators), tolerance)
    basis = list(originals)
    old_length = 0
    depth = 0
    while len(basis) > old_length and depth < max_depth:
        fresh = basis[old_length:]
        old_length = len(basis)
        commutators = [1j * (a @ b - b @ a) for a in fresh for b in originals]
        basis = hermitian_basis(commutators, tolerance, basis)
        depth += 1
        logger.debug("Lie closure depth %d: dimension %d", depth, len(basis))
    return basis


def lie_closure_dim(generators: Iterable, tolerance: float = RANK_TOLERANCE) -> int:
    return len(lie_closure(generators, tolerance))


# ---------------------------------------------------------------------------
# Orbit connectivity
# ---------------------------------------------------------------------------


def staged_generators() -> list[HermitianMatrix]:
    """Search order: first-factor rotations, the two mixed families, then
    ``Z (x) 1`` and ``(X (x) Y + Y (x) X)/2``, which link ``|00>`` and ``|11>``."""

    combined = HermitianMatrix(
        0.5 * (pauli_word("XY").matrix + pauli_word("YX").matrix), label="(XY+YX)/2"
    )
    ordered = ["XI", "YI", "XX", "YX", "ZX", "XY", "YY", "ZY", "IZ", "ZI"]
    return [pauli_word(label) for label in ordered] + [combined]


@dataclass(frozen=True)
class OrbitResult:
    """Accepted ``(generator label, angle)`` steps and the fidelity they reach."""

    steps: tuple[tuple[str, float], ...]
    fidelity: float
    converged: bool
    sweeps: int


def haar_random_state(rng: np.random.Generator, dimension: int = 4) -> StateVector:
    """Unitarily invariant random pure state from a normalized complex Gaussian."""

    amplitudes = rng.normal(size=dimension) + 1j * rng.normal(size=dimension)
    return StateVector.normalized(amplitudes)


def _line_search(eigenvalues: np.ndarray, target: np.ndarray, coefficients: np.ndarray):
    """Best angle for ``|<e0| exp(-i a G) psi>|^2``.

    ``target`` is the first row of the eigenvector matrix and ``coefficients``
    the state in the eigenbasis.
    """

    def fidelity(angle):
        phases = np.exp(-1j * np.multiply.outer(np.atleast_1d(angle), eigenvalues))
        return np.abs(phases @ (target * coefficients)) ** 2

    grid = np.linspace(-math.pi, math.pi, ANGLE_GRID_POINTS, endpoint=False)
    values = fidelity(grid)
    best = int(np.argmax(values))
    step = grid[1] - grid[0]
    refined = minimize_scalar(
        lambda a: -float(fidelity(a)[0]),
        bounds=(grid[best] - step, grid[best] + step),
        method="bounded",
        options={"xatol": 1e-13},
    )
    if -refined.fun >= values[best]:
        return float(refined.x), float(-refined.fun)
    return float(grid[best]), float(values[best])


def orbit_connect(psi, budget: int = DEFAULT_ORBIT_BUDGET) -> OrbitResult:
    """Connect ``psi`` to ``|00>`` with exponentials of the staged generators.

    Coordinate ascent: every sweep line-searches each generator's angle in
    turn. ``budget`` caps the number of sweeps; exhaustion is reported through
    ``converged=False`` with the best fidelity reached.
    """

    state = (psi if isinstance(psi, StateVector) else StateVector(psi)).amplitudes.copy()
    if state.shape != (4,):
        raise ValueError("Orbit search needs a two-qubit (4-dimensional) state.")
    generators = staged_generators()
    decompositions = [np.linalg.eigh(g.matrix) for g in generators]
    steps: list[tuple[str, float]] = []
    fidelity = float(abs(state[0]) ** 2)
    sweeps = 0
    while fidelity < 1.0 - FIDELITY_TARGET and sweeps < budget:
        sweeps += 1
        for generator, (eigenvalues, vectors) in zip(generators, decompositions):
            target = vectors[0, :]
            coefficients = vectors.conj().T @ state
            angle, candidate = _line_search(eigenvalues, target, coefficients)
            if abs(angle) < MIN_STEP_ANGLE or candidate <= fidelity:
                continue
            state = vectors @ (np.exp(-1j * angle * eigenvalues) * coefficients)
            fidelity = float(abs(state[0]) ** 2)
            steps.append((generator.label, angle))
    result = OrbitResult(
        steps=tuple(steps),
        fidelity=fidelity,
        converged=fidelity >= 1.0 - FIDELITY_TARGET,
        sweeps=sweeps,
    )
    logger.debug(
        "Orbit search: fidelity %.15f after %d sweeps and %d steps",
        result.fidelity,
        result.sweeps,
        len(result.steps),
    )
    return result


def orbit_unitary(steps: Iterable[tuple[str, float]]) -> np.ndarray:
    """Product of ``exp(-i a G)`` over the recorded steps, first step rightmost."""

    by_label = {g.label: g.matrix for g in staged_generators()}
    unitary = np.eye(4, dtype=complex)
    for label, angle in steps:
        unitary = expm(-1j * angle * by_label[label]) @ unitary
    return unitary


# ---------------------------------------------------------------------------
# Dimension counting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShrinkingMargin:
    """Lower bound on the symmetry-group dimension against the largest proper subgroup."""

    bound: int
    largest_subgroup_dim: int
    verdict: str


def shrinking_margin(n: int, m: int) -> ShrinkingMargin:
    """Compare ``N^2 - 1 - M`` with ``(N - 1)^2``.

    A bound above the largest proper subgroup dimension, i.e. ``M < 2N - 2``,
    is a contradiction.
    """

    if n < 2:
        raise ValueError("Hilbert-space dimension N must be at least 2.")
    if m < 0:
        raise ValueError("Ontological dimension M must be non-negative.")
    bound = n * n - 1 - m
    largest = (n - 1) ** 2
    return ShrinkingMargin(
        bound=bound,
        largest_subgroup_dim=largest,
        verdict="contradiction" if m < 2 * n - 2 else "consistent",
    )
