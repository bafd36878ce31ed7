"""Tests for Bloch flows and stochastic-kernel fits."""
from __future__ import annotations

import math

import numpy as np
import pytest

from ontoqubit.domain.models.geometry import (
    X_AXIS,
    Z_AXIS,
    BlochVector,
    SphericalAngles,
    fibonacci_cap,
    from_spherical,
    to_spherical,
)
from ontoqubit.domain.models.kernel import DimensionMismatchError, KernelMatrix, OnticGrid
from ontoqubit.domain.models.ontic import TransformationRecord
from ontoqubit.domain.models.operators import (
    PAULI_X,
    PAULI_Y,
    HermitianMatrix,
    NonHermitianError,
    StateVector,
    spinor_to_bloch,
)
from ontoqubit.domain.services import markov_analysis
from ontoqubit.domain.services.base_model import VALIDITY_ANGLE

T = markov_analysis.DEFAULT_FLOW_TIME


def test_flows_rotate_right_handedly() -> None:
    """z turns x toward y and y turns z toward x."""

    rotated_x = markov_analysis.bloch_flow("z", 0.3, X_AXIS)
    rotated_z = markov_analysis.bloch_flow("y", 0.3, Z_AXIS)

    assert np.allclose(rotated_x.as_array(), [math.cos(0.3), math.sin(0.3), 0.0], atol=1e-15)
    assert np.allclose(rotated_z.as_array(), [math.sin(0.3), 0.0, math.cos(0.3)], atol=1e-15)
    assert markov_analysis.bloch_flow("identity", 0.3, X_AXIS) == X_AXIS


def test_unknown_generator_is_rejected() -> None:
    """Only identity, x, y and z flows exist."""

    with pytest.raises(ValueError):
        markov_analysis.bloch_flow("w", 0.1, Z_AXIS)


def test_three_step_rotation_matches_the_x_flow() -> None:
    """y(pi/2) z(t) y(-pi/2) implements the same Bloch map as the x flow."""

    for point in fibonacci_cap(25):
        v = BlochVector.from_array(point)
        composed = markov_analysis.three_step_rotation(0.7, v).as_array()
        direct = markov_analysis.bloch_flow("x", 0.7, v).as_array()
        assert np.max(np.abs(composed - direct)) < 1e-12


def test_spherical_rates_match_a_finite_difference() -> None:
    """The y-flow rates of theta and phi agree with a small step of the flow."""

    v = from_spherical(SphericalAngles(theta=0.6, phi=1.1))
    h = 1e-6
    ahead = to_spherical(markov_analysis.bloch_flow("y", h, v))
    behind = to_spherical(markov_analysis.bloch_flow("y", -h, v))

    theta_rate, phi_rate = markov_analysis.flow_rates_spherical(v)

    assert (ahead.theta - behind.theta) / (2 * h) == pytest.approx(theta_rate, abs=1e-6)
    assert (ahead.phi - behind.phi) / (2 * h) == pytest.approx(phi_rate, abs=1e-6)


def test_spinor_evolution_matches_the_bloch_flow() -> None:
    """exp(-i sigma_y t) rotates the Bloch vector by 2t about y."""

    phi = StateVector.normalized([0.8, 0.36 + 0.48j])
    evolved = markov_analysis.evolve_axis(HermitianMatrix(PAULI_Y), T, phi)
    start = BlochVector.from_array(spinor_to_bloch(phi.amplitudes))

    expected = markov_analysis.bloch_flow("y", 2 * T, start).as_array()

    assert np.max(np.abs(spinor_to_bloch(evolved) - expected)) < 1e-10
    assert np.linalg.norm(evolved) == pytest.approx(1.0, abs=1e-12)


def test_evolve_axis_validates_its_operands() -> None:
    """Non-Hermitian generators and mismatched dimensions raise."""

    with pytest.raises(NonHermitianError):
        markov_analysis.evolve_axis(np.array([[0.0, 1.0], [0.0, 0.0]]), 0.1, [1.0, 0.0])
    with pytest.raises(DimensionMismatchError):
        markov_analysis.evolve_axis(PAULI_X, 0.1, [1.0, 0.0, 0.0])


def test_kernel_matrix_validation() -> None:
    """Kernels must be square, non-negative and column-stochastic."""

    with pytest.raises(ValueError):
        KernelMatrix(np.array([[0.5, 0.5], [0.6, 0.5]]))
    with pytest.raises(ValueError):
        KernelMatrix(np.array([[1.5, 0.0], [-0.5, 1.0]]))
    with pytest.raises(DimensionMismatchError):
        KernelMatrix(np.ones((2, 3)) / 2)


def test_compose_kernels_is_matrix_product() -> None:
    """Composition multiplies; mismatched sizes raise."""

    swap = KernelMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    mixed = KernelMatrix(np.array([[0.7, 0.2], [0.3, 0.8]]))

    composed = markov_analysis.compose_kernels(swap, mixed)

    assert np.allclose(composed.matrix, swap.matrix @ mixed.matrix)
    assert np.allclose(markov_analysis.compose_kernels(swap, swap).matrix, np.eye(2))
    with pytest.raises(DimensionMismatchError):
        markov_analysis.compose_kernels(swap, KernelMatrix.identity(3))


def test_simplex_projection() -> None:
    """Projected columns are distributions; distributions are fixed points."""

    rng = np.random.default_rng(0)
    projected = markov_analysis.project_columns_to_simplex(rng.normal(size=(6, 5)))
    stochastic = projected.copy()

    assert np.all(projected >= 0.0)
    assert np.allclose(projected.sum(axis=0), 1.0)
    assert np.allclose(markov_analysis.project_columns_to_simplex(stochastic), stochastic)


def test_grid_indices_wrap_and_clamp() -> None:
    """Branch-0 bins wrap around 2 pi, branch-1 bins clamp to the last one."""

    grid = OnticGrid(g0=16, g1=16, theta0=VALIDITY_ANGLE)

    assert grid.index0(2 * math.pi - 1e-9) == 0
    assert grid.index1(VALIDITY_ANGLE) == 16 + 15
    assert grid.dimension == 32


def test_ensemble_states_fit_inside_the_cone() -> None:
    """Sixty-four states whose flowed images stay in the cone."""

    vectors = markov_analysis.ensemble_vectors(T)
    zeniths = [to_spherical(v).theta for v in vectors]

    assert len(vectors) == 64
    assert max(zeniths) + T <= VALIDITY_ANGLE
    with pytest.raises(ValueError):
        markov_analysis.ensemble_vectors(VALIDITY_ANGLE)


def test_snapped_ensemble_has_two_point_columns() -> None:
    """Every column holds the two snapped peaks."""

    grid = markov_analysis.build_grid(32, 32)
    ensemble = markov_analysis.build_ensemble(markov_analysis.ensemble_vectors(T), grid)

    assert ensemble.distributions.shape == (64, 64)
    assert np.all(np.count_nonzero(ensemble.distributions, axis=0) == 2)


def test_identical_ensembles_give_the_identity_kernel() -> None:
    """When sources equal targets the solver returns the identity at once."""

    sources = np.eye(4)[:, [0, 1, 2, 3, 0]]

    fit = markov_analysis.solve_stochastic_kernel(sources, sources)

    assert fit.converged and fit.iterations == 0 and fit.residual == 0.0
    assert np.array_equal(fit.kernel.matrix, np.eye(4))


def test_solver_recovers_a_permutation() -> None:
    """A cyclic shift of point masses is found to high accuracy."""

    sources = np.eye(5)
    targets = np.roll(sources, 1, axis=0)

    fit = markov_analysis.solve_stochastic_kernel(sources, targets, budget=5_000)

    assert fit.residual < 1e-9
    assert np.allclose(fit.kernel.matrix, targets, atol=1e-6)


def test_solver_reports_budget_exhaustion() -> None:
    """An exhausted budget returns the best kernel with converged=False."""

    sources = np.array([[1.0, 0.5], [0.0, 0.5]])
    targets = np.array([[0.0, 1.0], [1.0, 0.0]])

    fit = markov_analysis.solve_stochastic_kernel(sources, targets, budget=3)

    assert not fit.converged
    assert fit.iterations == 3
    assert fit.residual > 0.0


def test_z_rotation_is_markovian_and_y_rotation_is_not() -> None:
    """The z flow has an exact kernel; the y flow keeps a residual floor."""

    z_row, = markov_analysis.markov_gap("z", [(16, 16)])
    y_row, = markov_analysis.markov_gap("y", [(16, 16)], budget=2_000)

    assert z_row.residual < 1e-9
    assert z_row.converged
    assert y_row.residual >= 100.0 * z_row.residual
    assert y_row.residual > 1e-4
    assert y_row.to_dict()["ensemble_size"] == 64


def test_markov_gap_needs_increasing_resolutions() -> None:
    """Resolutions must grow strictly."""

    with pytest.raises(ValueError):
        markov_analysis.markov_gap("y", [(16, 16), (8, 8)])


def test_three_step_rotation_is_built_from_tagged_records() -> None:
    """The x rotation is recorded as rotate-in, evolve and rotate-out steps."""

    records = markov_analysis.three_step_records(T)

    assert [record.context_tag for record in records] == ["rotate-in", "evolve", "rotate-out"]
    assert [record.generator for record in records] == ["y", "z", "y"]
    assert records[1].t == T
    start = from_spherical(SphericalAngles(theta=0.4, phi=2.0))
    v = start
    for record in records:
        v = markov_analysis.apply_transformation(record, v)
    expected = markov_analysis.bloch_flow("x", T, start)
    assert v.as_array() == pytest.approx(expected.as_array(), abs=1e-12)


def test_identity_record_leaves_states_alone() -> None:
    """The identity generator is a no-op for any time."""

    record = TransformationRecord("identity", 1.7)

    assert markov_analysis.apply_transformation(record, X_AXIS) == X_AXIS
