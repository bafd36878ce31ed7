"""Small dense Hermitian operators and state vectors."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HERMITIAN_TOLERANCE = 1e-12
NORM_TOLERANCE = 1e-12

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}


class NonHermitianError(ValueError):
    """Signal a matrix that is not Hermitian within tolerance."""


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Square complex matrix with ``H = H^dagger``; ``label`` is informational."""

    matrix: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise NonHermitianError("Hermitian matrices must be square.")
        if np.max(np.abs(matrix - matrix.conj().T), initial=0.0) > HERMITIAN_TOLERANCE:
            raise NonHermitianError(f"Matrix {self.label!r} is not Hermitian.")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm complex amplitude vector."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"State vector must have unit norm, got {norm!r}.")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def dimension(self) -> int:
        return int(self.amplitudes.shape[0])

    @classmethod
    def normalized(cls, amplitudes) -> "StateVector":
        array = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(array / np.linalg.norm(array))


def spinor_to_bloch(amplitudes) -> np.ndarray:
    """Bloch vector ``(2 Re(a* b), 2 Im(a* b), |a|^2 - |b|^2)`` of a qubit spinor ``(a, b)``."""

    a, b = np.asarray(amplitudes, dtype=complex).reshape(2)
    product = np.conj(a) * b
    return np.array([2.0 * product.real, 2.0 * product.imag, abs(a) ** 2 - abs(b) ** 2])
