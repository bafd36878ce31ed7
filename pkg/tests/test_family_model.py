"""Tests for the two-parameter model family."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats

from ontoqubit.domain.models.family import (
    CoordinatePoleError,
    CoordPair,
    InvalidModelParamsError,
    ModelParams,
)
from ontoqubit.domain.models.geometry import BlochVector, fibonacci_cap
from ontoqubit.domain.models.ontic import OnticState
from ontoqubit.domain.services import base_model, family_model

PARAMETER_SETS = [
    (math.pi / 2.0, 1.0),
    (math.pi / 3.0, 0.8),
    (1.0, 0.7),
    (0.9273, 0.61),
]
X0_GRID = np.linspace(0.0, 2 * math.pi, 32, endpoint=False)
X1_GRID = (np.arange(32) + 0.5) * math.pi / 32


@pytest.fixture(params=PARAMETER_SETS, ids=lambda p: f"theta0={p[0]:.3f}-s={p[1]}")
def params(request) -> ModelParams:
    """Each admissible parameter set of the acceptance sweep."""

    theta0, s = request.param
    return ModelParams(theta0=theta0, s=s)


@pytest.mark.parametrize("theta0, s", [(1.0, 0.5), (math.pi / 3.0, 1.2), (0.0, 1.0), (2.0, 1.0)])
def test_invalid_parameters_are_rejected(theta0: float, s: float) -> None:
    """Parameters outside |cos theta0| <= s <= 1, 0 < theta0 <= pi/2 raise."""

    with pytest.raises(InvalidModelParamsError):
        ModelParams(theta0=theta0, s=s)


def test_weights_are_probabilities_exactly_for_admissible_parameters(params: ModelParams) -> None:
    """Both weights stay in [0, 1] over the coordinate grid."""

    grid0, grid1 = np.meshgrid(X0_GRID, X1_GRID, indexing="ij")
    r0, r1 = family_model.raw_weights(grid0, grid1, params.theta0, params.s)

    assert np.all(r0 >= -1e-15) and np.all(r0 <= 1.0 + 1e-15)
    assert np.all(r1 >= -1e-15) and np.all(r1 <= 1.0 + 1e-15)
    assert np.allclose(r0 + r1, 1.0, atol=1e-14)


def test_weights_turn_negative_outside_the_admissible_range() -> None:
    """With s < |cos theta0| some branch-0 weight is negative."""

    r0, _ = family_model.raw_weights(X0_GRID, np.full_like(X0_GRID, math.pi / 2), 1.0, 0.3)

    assert np.min(r0) < 0.0


def test_identities_hold_on_the_grid(params: ModelParams) -> None:
    """Orthogonality, main constraint, branch constants and H consistency vanish."""

    grid0, grid1 = np.meshgrid(X0_GRID, X1_GRID, indexing="ij")
    vectors = family_model.coords_to_vectors(grid0, grid1, params).reshape(-1, 3)
    constant0, constant1 = family_model.verify_branch_constants(X0_GRID, X1_GRID, params)

    assert family_model.verify_orthogonality(X0_GRID, X1_GRID, params) < 1e-10
    assert family_model.verify_main_constraint(X0_GRID, X1_GRID, params) < 1e-10
    assert constant0 < 1e-10
    assert constant1 < 1e-10
    assert family_model.verify_H_consistency(vectors, params) < 1e-10


def test_negative_controls_break_the_identities(params: ModelParams) -> None:
    """Perturbed offsets or branch vectors leave a clear residual."""

    def tilted_g0(x0, p):
        return family_model.g0(x0, p) + np.array([0.0, 0.0, 0.2])

    assert family_model.verify_orthogonality(X0_GRID, X1_GRID, params, chi0=-params.s + 0.1) > 1e-3
    assert (
        family_model.verify_main_constraint(X0_GRID, X1_GRID, params, g0_fn=tilted_g0) > 1e-3
    )


def test_state_vectors_are_unit_and_invert(params: ModelParams) -> None:
    """coord_to_bloch gives unit vectors and bloch_to_coord recovers the coordinates."""

    for x0, x1 in [(0.3, 0.4), (2.0, 1.5), (5.9, 2.9)]:
        coords = CoordPair(x0=x0, x1=x1)
        v = family_model.coord_to_bloch(coords, params)
        recovered = family_model.bloch_to_coord(v, params)
        assert np.linalg.norm(v.as_array()) == pytest.approx(1.0, abs=1e-12)
        assert recovered.x0 == pytest.approx(x0, abs=1e-9)
        assert recovered.x1 == pytest.approx(x1, abs=1e-9)


def test_coordinate_poles_are_rejected(params: ModelParams) -> None:
    """The two poles sit 2 theta0 apart and have no coordinates."""

    north, south = family_model.coordinate_poles(params)

    assert north.angle_to(south) == pytest.approx(2.0 * params.theta0, abs=1e-12)
    with pytest.raises(CoordinatePoleError):
        family_model.bloch_to_coord(north, params)
    with pytest.raises(CoordinatePoleError):
        CoordPair(x0=0.0, x1=0.0)


def test_response_matrix_is_singular_with_a_null_vector(params: ModelParams) -> None:
    """det R vanishes and the null vector annihilates R and the Born sources."""

    rng = np.random.default_rng(2)
    for _ in range(10):
        x0, y0 = rng.uniform(0.0, 2 * math.pi, size=2)
        x1, y1 = rng.uniform(0.1, math.pi - 0.1, size=2)
        result = family_model.verify_detR_null(x0, x1, y0, y1, params)
        assert abs(result.det) < 1e-10
        assert result.left_null_residual < 1e-10
        assert result.source_residual < 1e-10


def test_degenerate_quadruple_has_a_vanishing_determinant() -> None:
    """Equal coordinate pairs make two rows equal."""

    params = ModelParams(theta0=1.0, s=0.7)

    result = family_model.verify_detR_null(1.0, 0.5, 1.0, 0.5, params)

    assert abs(result.det) <= 1e-15


def test_response_from_hidden_function_matches_closed_form(params: ModelParams) -> None:
    """The g/k form with H(w) = (s - Delta)/2 equals the closed response."""

    events = [BlochVector.from_array(p) for p in fibonacci_cap(20, math.pi / 2)]
    for x in (0.4, 1.3, 2.2):
        for w in events:
            for n in (0, 1):
                if n == 1 and 1.0 - params.s * math.sin(x) <= 0.0:
                    continue
                direct = family_model.raw_response_family(w, n, x, params)
                hidden = family_model.response_from_hidden_function(w, n, x, params)
                assert hidden == pytest.approx(direct, abs=1e-10)


def test_translation_invariance(params: ModelParams) -> None:
    """Opposite shifts of the two branch vectors change nothing observable."""

    coords = [CoordPair(x0=0.5, x1=0.7), CoordPair(x0=3.0, x1=2.0)]
    events = [BlochVector.from_array(p) for p in fibonacci_cap(12)]

    assert family_model.translation_invariance((0.3, -0.1, 0.2), coords, events, params) < 1e-10


def test_translation_invariance_depends_on_the_hidden_function(monkeypatch) -> None:
    """A wrong closed form for H is exposed by the shifted branch vectors."""

    params = ModelParams(theta0=math.acos(0.6), s=0.6 + 1e-3)
    coords = [CoordPair(x0=0.3, x1=0.4)]
    events = [BlochVector(0.0, 0.0, 1.0), BlochVector(0.6, 0.0, 0.8)]
    monkeypatch.setattr(family_model, "h_closed_form", lambda w, p: 1234.5)

    residual = family_model.translation_invariance((0.3, -0.2, 0.1), coords, events, params)

    assert residual > 1.0


def test_translation_invariance_accepts_an_explicit_hidden_function(params: ModelParams) -> None:
    """Passing the closed form explicitly agrees with the default; a constant does not."""

    coords = [CoordPair(x0=1.1, x1=0.9)]
    events = [BlochVector.from_array(p) for p in fibonacci_cap(8)]
    shift = (0.2, 0.1, -0.3)

    exact = family_model.translation_invariance(
        shift, coords, events, params, hidden=family_model.h_closed_form
    )
    constant = family_model.translation_invariance(
        shift, coords, events, params, hidden=lambda w, p: 0.0
    )

    assert exact < 1e-10
    assert constant > 1e-3


def test_branch_expressions_for_h_follow_the_shift(params: ModelParams) -> None:
    """Both branch expressions give H(v), minus v.t/2 once the branches are shifted."""

    shift = np.array([0.3, -0.1, 0.2])
    for pair in (CoordPair(x0=0.5, x1=0.7), CoordPair(x0=4.0, x1=2.5)):
        v = family_model.coord_to_bloch(pair, params)
        closed = family_model.h_closed_form(v, params)
        moved = closed - 0.5 * float(v.as_array() @ shift)

        assert family_model.h_from_branch_zero(v, params) == pytest.approx(closed, abs=1e-12)
        assert family_model.h_from_branch_one(v, params) == pytest.approx(closed, abs=1e-12)
        assert family_model.h_from_branch_zero(v, params, shift) == pytest.approx(moved, abs=1e-12)
        assert family_model.h_from_branch_one(v, params, shift) == pytest.approx(moved, abs=1e-12)


def test_branch_four_vectors_are_minkowski_orthogonal(params: ModelParams) -> None:
    """The default offsets make each pair of branch four-vectors orthogonal."""

    for x0, x1 in ((0.2, 0.3), (2.5, 1.6), (5.9, 2.9)):
        alpha, beta = family_model.branch_four_vectors(x0, x1, params)
        shifted_alpha, shifted_beta = family_model.branch_four_vectors(
            x0, x1, params, chi0=-params.s + 0.1
        )

        assert alpha.minkowski(beta) == pytest.approx(0.0, abs=1e-12)
        assert alpha.temporal == pytest.approx(float(family_model.inverse_k0(x0, params)) - params.s)
        assert abs(shifted_alpha.minkowski(shifted_beta)) > 1e-6


def test_worked_values_at_sixty_degrees() -> None:
    """Closed-form values for theta0 = pi/3, s = 0.8."""

    params = ModelParams(theta0=math.pi / 3.0, s=0.8)

    v = family_model.coord_to_bloch(CoordPair(x0=math.pi / 2.0, x1=math.pi / 2.0), params)
    r0, r1 = family_model.weights(CoordPair(x0=0.0, x1=math.pi / 2.0), params)

    assert v.as_array() == pytest.approx([0.5, 0.8660254, 0.0], abs=1e-7)
    assert r0 == pytest.approx(0.8666667, abs=1e-7)
    assert r0 + r1 == 1.0
    assert float(family_model.inverse_k0(0.0, params)) == pytest.approx(
        math.cos(params.theta0) + params.s, abs=1e-15
    )


def test_economical_member_reduces_to_the_base_model() -> None:
    """At theta0 = pi/2, s = 1 weights and responses coincide with the base model."""

    params = ModelParams.economical()
    events = [BlochVector.from_array(p) for p in fibonacci_cap(40)]
    for x0, x1 in [(0.2, 0.1), (1.7, 0.5), (4.4, 0.9)]:
        r0, _ = family_model.raw_weights(x0, x1, params.theta0, params.s)
        assert float(r0) == pytest.approx(math.sin(x1), abs=1e-12)
        for w in events:
            assert family_model.raw_response_family(w, 0, x0, params) == pytest.approx(
                base_model.raw_response(w, OnticState(x=x0, n=0)), abs=1e-12
            )
            assert family_model.raw_response_family(w, 1, x1, params) == pytest.approx(
                base_model.raw_response(w, OnticState(x=x1, n=1)), abs=1e-12
            )


@settings(max_examples=40, deadline=None)
@given(
    floats(min_value=0.0, max_value=2 * math.pi - 1e-6),
    floats(min_value=0.05, max_value=math.pi - 0.05),
)
def test_born_identity_from_coordinates(x0: float, x1: float) -> None:
    """r0 P0 + r1 P1 equals (1 + w.v)/2 for the state at any coordinate pair."""

    params = ModelParams(theta0=1.0, s=0.7)
    v = family_model.coord_to_bloch(CoordPair(x0=x0, x1=x1), params)
    for point in fibonacci_cap(8):
        w = BlochVector.from_array(point)
        assert family_model.born_check_family(v, w, params, validate=False) < 1e-10


@pytest.mark.parametrize("theta0, s", [(math.pi / 2.0, 1.0), (math.pi / 3.0, 0.8), (1.0, 0.7)])
def test_positivity_region_is_not_empty(theta0: float, s: float) -> None:
    """Admissible members keep a region of valid states."""

    region = family_model.positivity_region(ModelParams(theta0=theta0, s=s), resolution=16)

    assert not region.is_empty
    assert len(region.rows()) == 16 * 32
    assert {row["valid_flag"] for row in region.rows()} <= {0, 1}


def test_positivity_region_recovers_the_cone_for_the_economical_member() -> None:
    """The largest valid zenith of the economical member is arccos(3/5)."""

    region = family_model.positivity_region(ModelParams.economical(), resolution=24)

    assert region.max_valid_zenith == pytest.approx(base_model.VALIDITY_ANGLE, abs=1e-6)


def test_region_resolution_must_be_usable() -> None:
    """Tiny grids are rejected."""

    with pytest.raises(ValueError):
        family_model.positivity_region(ModelParams.economical(), resolution=2)
