"""Verification suites: one use case per CLI subcommand.

Each suite runs its module checks and returns a :class:`Report` whose checks
carry explicit tolerances. Seeds only enter through :func:`stream_for`, so a
rerun with the same configuration yields the same report body.
"""
from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from ontoqubit.application.run_config import RunConfig
from ontoqubit.config.settings import Settings, get_settings
from ontoqubit.domain.models.allocation import BUDGET_TOLERANCE
from ontoqubit.domain.models.family import CoordPair, ModelParams
from ontoqubit.domain.models.geometry import (
    TWO_PI,
    Z_AXIS,
    BlochVector,
    born_probability,
    fibonacci_cap,
    random_cap,
    spherical_to_cartesian,
)
from ontoqubit.domain.models.ontic import MeasurementRecord, OnticState, PreparationRecord
from ontoqubit.domain.models.operators import PAULI_Y, HermitianMatrix, spinor_to_bloch
from ontoqubit.domain.models.report import CheckResult, Report, ReportTable
from ontoqubit.domain.services import (
    base_model,
    family_model,
    group_checks,
    markov_analysis,
    patch_model,
    resource_cost,
)
from ontoqubit.domain.services.random_streams import stream_for

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
SAMPLE_SIGMA_LIMIT = 4.5
IDENTITY_TOLERANCE = 1e-12
FAMILY_TOLERANCE = 1e-10
FAMILY_PARAMETER_SETS: tuple[tuple[float, float], ...] = (
    (math.pi / 2.0, 1.0),
    (math.pi / 3.0, 0.8),
    (1.0, 0.7),
    (0.9273, 0.61),
)
ROUNDOFF_CELLS: tuple[int, ...] = (16, 32, 64, 128, 256, 512, 1024)
EXHAUSTIVE_GRID_LIMIT = 1_000_000


@dataclass(frozen=True)
class SuiteOutcome:
    """Checks, optional table and summary values produced by one suite body."""

    checks: Sequence[CheckResult]
    table: ReportTable | None = None
    summary: Mapping[str, Any] = field(default_factory=dict)


class SuiteUseCase:
    """Run a suite body, time it and wrap the outcome into a report."""

    name = ""

    def __init__(self, settings: Settings | None = None) -> None:
        """Initialize the suite with the toolkit settings."""

        self._settings = settings or get_settings()

    def execute(self, config: RunConfig) -> Report:
        """Run the suite for ``config`` and return its report."""

        started = time.perf_counter()
        outcome = self._run(config)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        report = Report(
            version=self._settings.report_schema_version,
            suite=self.name,
            config=config.to_dict(),
            checks=tuple(outcome.checks),
            table=outcome.table,
            summary=dict(outcome.summary),
            elapsed_ms=elapsed_ms,
        )
        logger.info(
            "Suite %s: %d of %d checks passed in %.0f ms",
            self.name,
            len(report.checks) - len(report.failed_checks()),
            len(report.checks),
            elapsed_ms,
        )
        for check in report.failed_checks():
            logger.warning("Check failed: %s value=%r tol=%r", check.name, check.value, check.tol)
        return report

    def _run(self, config: RunConfig) -> SuiteOutcome:
        raise NotImplementedError

    @staticmethod
    def _seed(config: RunConfig) -> int:
        return DEFAULT_SEED if config.seed is None else config.seed


def _as_vectors(points: np.ndarray) -> list[BlochVector]:
    return [BlochVector.from_array(point) for point in points]


# ---------------------------------------------------------------------------
# Base model
# ---------------------------------------------------------------------------


class VerifyBornUseCase(SuiteUseCase):
    """Born identity, response range and validity boundary of the base model."""

    name = "verify-born"

    def _run(self, config: RunConfig) -> SuiteOutcome:
        count = config.grid or 100
        states = _as_vectors(fibonacci_cap(count, base_model.VALIDITY_ANGLE))
        events = _as_vectors(fibonacci_cap(count))
        opposites = [-w for w in events]

        born_residual = 0.0
        lowest = math.inf
        highest = -math.inf
        complement = 0.0
        exclusion = 0.0
        for v in states:
            density = base_model.prepare_density(v)
            (weight0, state0), (weight1, state1) = density.states()
            for w, minus_w in zip(events, opposites):
                p0 = base_model.raw_response(w, state0)
                p1 = base_model.raw_response(w, state1)
                lowest = min(lowest, p0, p1)
                highest = max(highest, p0, p1)
                combined = weight0 * p0 + weight1 * p1
                born_residual = max(born_residual, abs(combined - born_probability(w, v)))
                for state in (state0, state1):
                    flipped = base_model.raw_response(minus_w, state)
                    complement = max(
                        complement, abs(flipped + base_model.raw_response(w, state) - 1.0)
                    )
            exclusion = max(exclusion, base_model.outcome_probability(v, -v))

        boundary = base_model.validity_boundary()
        checks = [
            CheckResult.at_most(
                "base-model/born-identity max residual", born_residual, IDENTITY_TOLERANCE
            ),
            CheckResult.at_least(
                "base-model/response-range minimum branch response",
                lowest,
                -base_model.RESPONSE_TOLERANCE,
            ),
            CheckResult.at_most(
                "base-model/response-range maximum branch response",
                highest,
                1.0 + base_model.RESPONSE_TOLERANCE,
            ),
            CheckResult.at_most(
                "base-model/complement-rule max deviation", complement, IDENTITY_TOLERANCE
            ),
            CheckResult.at_most(
                "base-model/orthogonal-exclusion event probability", exclusion, 0.0
            ),
            CheckResult.equals(
                "base-model/validity-cone boundary against arccos(3/5)",
                boundary,
                math.acos(0.6),
                1e-6,
            ),
        ]
        return SuiteOutcome(
            checks=checks,
            summary={"validity_boundary": boundary, "pairs": count * count},
        )


class SampleUseCase(SuiteUseCase):
    """Weak simulation: sampled outcome frequencies against the Born rule."""

    name = "sample"

    def _run(self, config: RunConfig) -> SuiteOutcome:
        seed = self._seed(config)
        samples = config.samples or self._settings.default_samples
        pair_stream = stream_for(seed, "sample-pairs")
        states = _as_vectors(random_cap(pair_stream, config.pairs, base_model.VALIDITY_ANGLE))
        events = _as_vectors(random_cap(pair_stream, config.pairs))
        preparations = [
            PreparationRecord(v, context_tag=f"pair-{index}") for index, v in enumerate(states)
        ]
        measurements = [
            MeasurementRecord(w, context_tag=f"pair-{index}") for index, w in enumerate(events)
        ]

        def run_pair(index: int) -> dict[str, float | int]:
            v, w = preparations[index].v, measurements[index].w
            rng = stream_for(seed, f"sample-pair-{index}")
            outcomes = base_model.simulate_outcomes(v, w, rng, samples)
            p = born_probability(w, v)
            empirical = float(np.count_nonzero(outcomes == 1)) / samples
            sigma = math.sqrt(p * (1.0 - p) / samples)
            deviation = abs(empirical - p)
            if sigma > 0.0:
                z = deviation / sigma
            else:
                z = 0.0 if deviation == 0.0 else math.inf
            return {
                "pair": index,
                "p": p,
                "model_p": base_model.outcome_probability(v, w),
                "empirical": empirical,
                "sigma": sigma,
                "z": z,
            }

        with ThreadPoolExecutor(max_workers=self._settings.threads) as executor:
            rows = list(executor.map(run_pair, range(config.pairs)))

        worst_z = max(row["z"] for row in rows)
        model_gap = max(abs(row["model_p"] - row["p"]) for row in rows)
        checks = [
            CheckResult.at_most(
                "base-model/weak-simulation binomial z-score max over pairs",
                worst_z,
                SAMPLE_SIGMA_LIMIT,
            ),
            CheckResult.at_most(
                "base-model/born-identity exact combined probability",
                model_gap,
                IDENTITY_TOLERANCE,
            ),
        ]
        table = ReportTable.from_records(("pair", "p", "empirical", "sigma", "z"), rows)
        return SuiteOutcome(checks=checks, table=table, summary={"samples": samples})


# ---------------------------------------------------------------------------
# Family model
# ---------------------------------------------------------------------------


def _config_params(config: RunConfig) -> ModelParams | None:
    if config.theta0 is None:
        return None
    return ModelParams(theta0=config.theta0, s=config.s)


def _params_label(params: ModelParams) -> str:
    return f"theta0={params.theta0:.4f}, s={params.s:.4f}"


class RegionUseCase(SuiteUseCase):
    """Positivity-region map of one family member."""

    name = "region"

    def _run(self, config: RunConfig) -> SuiteOutcome:
        params = _config_params(config) or ModelParams.economical()
        resolution = config.grid or 48
        region = family_model.positivity_region(params, resolution)

        theta_grid, phi_grid = np.meshgrid(region.theta_v, region.phi_v, indexing="ij")
        valid_states = spherical_to_cartesian(theta_grid[region.valid], phi_grid[region.valid])
        events = _as_vectors(fibonacci_cap(32))
        born_residual = 0.0
        for v in _as_vectors(valid_states):
            for w in events:
                born_residual = max(
                    born_residual, family_model.born_check_family(v, w, params, validate=False)
                )

        label = _params_label(params)
        checks = [
            CheckResult.at_least(
                f"family-model/positivity-region valid grid states ({label})",
                region.valid_count,
                1,
            ),
            CheckResult.at_most(
                f"family-model/born-identity on valid states ({label})",
                born_residual,
                IDENTITY_TOLERANCE,
            ),
        ]
        if params == ModelParams.economical():
            checks.append(
                CheckResult.equals(
                    "family-model/economical-reduction cone half-angle against arccos(3/5)",
                    region.max_valid_zenith,
                    base_model.VALIDITY_ANGLE,
                    region.zenith_step,
                )
            )
        table = ReportTable.from_records(
            ("theta0", "s", "theta_v", "phi_v", "valid_flag"), region.rows()
        )
        summary = {
            "valid_count": region.valid_count,
            "grid_size": int(region.valid.size),
            "max_valid_zenith": None if region.is_empty else region.max_valid_zenith,
        }
        return SuiteOutcome(checks=checks, table=table, summary=summary)


class FamilyCheckUseCase(SuiteUseCase):
    """Constraint identities of the family on coordinate grids, plus the reduction."""

    name = "family-check"

    def _run(self, config: RunConfig) -> SuiteOutcome:
        single = _config_params(config)
        parameter_sets = (
            [single]
            if single is not None
            else [ModelParams(theta0=t, s=s) for t, s in FAMILY_PARAMETER_SETS]
        )
        size = config.grid or 32
        x0_grid = np.linspace(0.0, TWO_PI, size, endpoint=False)
        x1_grid = (np.arange(size) + 0.5) * math.pi / size
        seed = self._seed(config)

        checks: list[CheckResult] = []
        rows: list[dict[str, float]] = []
        for params in parameter_sets:
            measured = self._identities(params, x0_grid, x1_grid, seed)
            label = _params_label(params)
            for key, value in measured.items():
                checks.append(CheckResult.at_most(
                        f"family-model/{key.replace('_', '-')} residual ({label})",
                        value,
                        FAMILY_TOLERANCE,
                    ))
            checks.append(
                CheckResult.at_least(
                    f"family-model/orthogonality negative control ({label})",
                    family_model.verify_orthogonality(
                        x0_grid, x1_grid, params, chi0=-params.s + 0.1
                    ),
                    1e-3,
                )
            )
            rows.append({"theta0": params.theta0, "s": params.s, **measured})

        reduction = self._reduction_gap(size)
        checks.append(
            CheckResult.at_most(
                "family-model/economical-reduction gap to the base model",
                reduction,
                IDENTITY_TOLERANCE,
            )
        )
        columns = ("theta0", "s") + tuple(key for key in rows[0] if key not in ("theta0", "s"))
        table = ReportTable.from_records(columns, rows)
        return SuiteOutcome(checks=checks, table=table, summary={"grid": size})

    @staticmethod
    def _identities(
        params: ModelParams, x0_grid: np.ndarray, x1_grid: np.ndarray, seed: int
    ) -> dict[str, float]:
        rng = stream_for(seed, f"family-quadruples-{params.theta0:.6f}-{params.s:.6f}")
        det = left_null = source = minkowski = 0.0
        for _ in range(32):
            x0, y0 = rng.uniform(0.0, TWO_PI, size=2)
            x1, y1 = math.pi * (0.02 + 0.96 * rng.random(2))
            alpha, beta = family_model.branch_four_vectors(x0, x1, params)
            minkowski = max(minkowski, abs(alpha.minkowski(beta)))
            result = family_model.verify_detR_null(x0, x1, y0, y1, params)
            det = max(det, abs(result.det))
            left_null = max(left_null, result.left_null_residual)
            source = max(source, result.source_residual)

        grid0, grid1 = np.meshgrid(x0_grid, x1_grid, indexing="ij")
        vectors = family_model.coords_to_vectors(grid0, grid1, params).reshape(-1, 3)
        constant0, constant1 = family_model.verify_branch_constants(x0_grid, x1_grid, params)
        coords = [
            CoordPair(x0=float(a), x1=float(b)) for a, b in zip(x0_grid[::4], x1_grid[::4])
        ]
        return {
            "orthogonality": family_model.verify_orthogonality(x0_grid, x1_grid, params),
            "four_vector_orthogonality": minkowski,
            "main_constraint": family_model.verify_main_constraint(x0_grid, x1_grid, params),
            "det_r": det,
            "null_vector": left_null,
            "source": source,
            "h_consistency": family_model.verify_H_consistency(vectors, params),
            "branch_zero_constant": constant0,
            "branch_one_constant": constant1,
            "translation_invariance": family_model.translation_invariance(
                (0.3, -0.2, 0.5), coords, _as_vectors(fibonacci_cap(16)), params
            ),
        }

    @staticmethod
    def _reduction_gap(size: int) -> float:
        """Largest weight or response difference between the economical member and the base model."""

        params = ModelParams.economical()
        x0_values = np.linspace(0.0, TWO_PI, size, endpoint=False)
        x1_values = (np.arange(size) + 0.5) * base_model.VALIDITY_ANGLE / size
        events = _as_vectors(fibonacci_cap(64))
        worst = 0.0
        for x0, x1 in zip(x0_values, x1_values):
            r0, _ = family_model.raw_weights(x0, x1, params.theta0, params.s)
            worst = max(worst, abs(float(r0) - math.sin(x1)))
            zero = OnticState(x=float(x0), n=0)
            one = OnticState(x=float(x1), n=1)
            for w in events:
                worst = max(
                    worst,
                    abs(
                        base_model.raw_response(w, zero)
                        - family_model.raw_response_family(w, 0, float(x0), params)
                    ),
                    abs(
                        base_model.raw_response(w, one)
                        - family_model.raw_response_family(w, 1, float(x1), params)
                    ),
                )
        return worst


# ---------------------------------------------------------------------------
# Full-sphere patches
# ---------------------------------------------------------------------------


class PatchesUseCase(SuiteUseCase):
    """Icosahedral atlas coverage and the full-sphere Born identity."""

    name = "patches"

    born_pairs = 1000
    exclusion_states = 100

    def _run(self, config: RunConfig) -> SuiteOutcome:
        seed = self._seed(config)
        atlas = patch_model.build_atlas()
        radius = patch_model.covering_radius(atlas)
        axis_residual = max(
            float(np.max(np.abs(rotation.apply(Z_AXIS).as_array() - axis.as_array())))
            for rotation, axis in zip(atlas.rotations, atlas.axes)
        )

        pair_stream = stream_for(seed, "patch-pairs")
        states = _as_vectors(random_cap(pair_stream, self.born_pairs))
        events = _as_vectors(random_cap(pair_stream, self.born_pairs))
        born_residual = max(
            patch_model.born_check_full(v, w, atlas) for v, w in zip(states, events)
        )

        exclusion_stream = stream_for(seed, "patch-exclusion")
        exclusion = max(
            patch_model.orthogonal_exclusion(v, atlas)
            for v in _as_vectors(random_cap(exclusion_stream, self.exclusion_states))
        )

        usage = np.bincount(
            [patch_model.select_patch(v, atlas) for v in states], minlength=len(atlas.axes)
        )
        checks = [
            CheckResult.at_most(
                "patch-model/covering-radius within the validity angle",
                radius,
                base_model.VALIDITY_ANGLE,
            ),
            CheckResult.at_most(
                "patch-model/patch-frames rotation axis residual",
                axis_residual,
                IDENTITY_TOLERANCE,
            ),
            CheckResult.at_most(
                "patch-model/born-identity full-sphere residual",
                born_residual,
                IDENTITY_TOLERANCE,
            ),
            CheckResult.at_most(
                "patch-model/orthogonal-exclusion event probability on support", exclusion, 0.0
            ),
        ]
        table = ReportTable(
            columns=("patch", "axis_x", "axis_y", "axis_z", "states_assigned"),
            rows=tuple(
                (index, axis.vx, axis.vy, axis.vz, int(usage[index]))
                for index, axis in enumerate(atlas.axes)
            ),
        )
        return SuiteOutcome(checks=checks, table=table, summary={"covering_radius": radius})


# ---------------------------------------------------------------------------
# Markov analysis
# ---------------------------------------------------------------------------


class NonMarkovUseCase(SuiteUseCase):
    """Kernel residuals for z and y rotations, and the flow consistency identities."""

    name = "nonmarkov"

    def _run(self, config: RunConfig) -> SuiteOutcome:
        budget = config.budget or self._settings.default_solver_budget
        threads = self._settings.threads
        t = markov_analysis.DEFAULT_FLOW_TIME
        base = (config.g0, config.g1)
        doubled = (2 * config.g0, 2 * config.g1)

        identity_row = markov_analysis.markov_gap("identity", [base], t, budget)[0]
        z_rows = markov_analysis.markov_gap("z", [base, doubled], t, budget, threads)
        y_rows = markov_analysis.markov_gap("y", [base, doubled], t, budget, threads)
        rows = [identity_row, *z_rows, *y_rows]

        cone_states = _as_vectors(fibonacci_cap(16, base_model.VALIDITY_ANGLE))
        three_step = max(
            float(
                np.max(
                    np.abs(
                        markov_analysis.three_step_rotation(t, v).as_array()
                        - markov_analysis.bloch_flow("x", t, v).as_array()
                    )
                )
            )
            for v in cone_states
        )
        spinor_gap = self._spinor_gap(t, self._seed(config))

        z_residual, z_doubled = z_rows[0].residual, z_rows[1].residual
        y_residual, y_doubled = y_rows[0].residual, y_rows[1].residual
        ratio = y_doubled / y_residual if y_residual > 0.0 else math.inf
        checks = [
            CheckResult.at_most(
                "markov-analysis/identity-kernel residual", identity_row.residual, 1e-15
            ),
            CheckResult.at_most("markov-analysis/sigma-z-kernel residual", z_residual, 1e-9),
            CheckResult.at_most(
                "markov-analysis/sigma-z-kernel residual after grid doubling", z_doubled, 1e-9
            ),
            CheckResult.at_least(
                "markov-analysis/sigma-y-floor residual against 100x sigma_z",
                y_residual,
                100.0 * z_residual,
            ),
            CheckResult.at_least(
                "markov-analysis/sigma-y-floor residual ratio after grid doubling", ratio, 0.5
            ),
            CheckResult.at_most(
                "markov-analysis/three-step-rotation against x flow", three_step, 1e-12
            ),
            CheckResult.at_most(
                "markov-analysis/spinor-flow evolution against bloch flow", spinor_gap, 1e-10
            ),
        ]
        table = ReportTable.from_records(
            ("generator", "G0", "G1", "ensemble_size", "t", "residual", "iterations"),
            [row.to_dict() for row in rows],
        )
        summary = {
            "budget": budget,
            "converged": {f"{row.generator}-{row.g0}x{row.g1}": row.converged for row in rows},
            "residual_ratio_y_over_z": y_residual / z_residual if z_residual > 0.0 else None,
        }
        return SuiteOutcome(checks=checks, table=table, summary=summary)

    @staticmethod
    def _spinor_gap(t: float, seed: int) -> float:
        """Evolve random spinors under sigma_y for ``t`` and compare with a Bloch rotation of ``2 t``."""

        hamiltonian = HermitianMatrix(PAULI_Y, label="Y")
        rng = stream_for(seed, "spinor-states")
        worst = 0.0
        for _ in range(8):
            phi = group_checks.haar_random_state(rng, dimension=2)
            evolved = spinor_to_bloch(markov_analysis.evolve_axis(hamiltonian, t, phi))
            start = BlochVector.from_array(spinor_to_bloch(phi.amplitudes))
            rotated = markov_analysis.bloch_flow("y", 2.0 * t, start).as_array()
            worst = max(worst, float(np.max(np.abs(evolved - rotated))))
        return worst


# ---------------------------------------------------------------------------
# Group checks
# ---------------------------------------------------------------------------


class GroupUseCase(SuiteUseCase):
    """Lie-closure dimension, orbit transitivity and the shrinking-margin counts."""

    name = "group"

    margin_cases: tuple[tuple[int, int, str], ...] = (
        (2, 1, "contradiction"),
        (2, 2, "consistent"),
        (3, 3, "contradiction"),
        (3, 4, "consistent"),
    )

    def _run(self, config: RunConfig) -> SuiteOutcome:
        generators = group_checks.sp2_generators()
        closure = group_checks.lie_closure_dim(generators)
        span = group_checks.span_dimension(generators)
        full = group_checks.lie_closure_dim(group_checks.pauli_products(2))

        rng = stream_for(self._seed(config), "orbit-states")
        budget = config.budget or group_checks.DEFAULT_ORBIT_BUDGET
        rows = []
        worst_fidelity = 1.0
        worst_replay = 0.0
        for index in range(config.states):
            psi = group_checks.haar_random_state(rng)
            result = group_checks.orbit_connect(psi, budget)
            replayed = group_checks.orbit_unitary(result.steps) @ psi.amplitudes
            worst_replay = max(worst_replay, abs(abs(replayed[0]) ** 2 - result.fidelity))
            worst_fidelity = min(worst_fidelity, result.fidelity)
            rows.append(
                {
                    "state": index,
                    "fidelity": result.fidelity,
                    "steps": len(result.steps),
                    "sweeps": result.sweeps,
                }
            )

        checks = [
            CheckResult.equals(
                "group-checks/lie-closure dimension of the generators", closure, 10
            ),
            CheckResult.equals(
                "group-checks/generator-span dimension of the generators", span, 10
            ),
            CheckResult.equals(
                "group-checks/lie-closure dimension of all pauli products", full, 15
            ),
            CheckResult.at_least(
                "group-checks/orbit-transitivity fidelity minimum", worst_fidelity, 1.0 - 1e-6
            ),
            CheckResult.at_most(
                "group-checks/orbit-replay fidelity deviation", worst_replay, 1e-10
            ),
        ]
        for n, m, expected in self.margin_cases:
            margin = group_checks.shrinking_margin(n, m)
            checks.append(
                CheckResult.equals(
                    f"group-checks/shrinking-margin N={n} M={m} is {expected}",
                    float(margin.verdict == expected),
                    1.0,
                )
            )
        table = ReportTable.from_records(("state", "fidelity", "steps", "sweeps"), rows)
        return SuiteOutcome(checks=checks, table=table, summary={"closure_dimension": closure})


# ---------------------------------------------------------------------------
# Resource cost
# ---------------------------------------------------------------------------


class ResourceUseCase(SuiteUseCase):
    """Closed-form information allocation and the measured round-off law."""

    name = "resource"

    def _run(self, config: RunConfig) -> SuiteOutcome:
        g = config.g
        information = config.info
        plan = resource_cost.optimal_allocation(g, information)
        bound = resource_cost.information_product_bound(information)
        max_count = int(EXHAUSTIVE_GRID_LIMIT ** (1.0 / len(g)))
        best_counts, best_error = resource_cost.exhaustive_allocation(g, bound, max_count)

        budget_gap = abs(sum(math.log(n) for n in plan.n) - information)
        information_gap = abs(
            resource_cost.required_information(g, plan.m, plan.delta_e) - information
        )
        error_gap = abs(
            resource_cost.predicted_error(
                g, resource_cost.required_information(g, plan.m, plan.delta_e)
            )
            - plan.delta_e
        ) / plan.delta_e
        rounded = tuple(int(round(n)) for n in plan.n)
        integral = all(abs(n - r) < 1e-6 for n, r in zip(plan.n, rounded))

        model = resource_cost.model_for(config.model)
        errors, slope = resource_cost.roundoff_scaling(model, ROUNDOFF_CELLS)
        gradients = (resource_cost.mean_gradient(model, 0), resource_cost.mean_gradient(model, 1))

        checks = [
            CheckResult.at_most(
                "resource-cost/budget-identity deviation", budget_gap, BUDGET_TOLERANCE
            ),
            CheckResult.at_most(
                "resource-cost/integer-optimum closed-form error ratio",
                best_error / plan.delta_e,
                1.0 + 2.0 / min(plan.n),
            ),
            CheckResult.at_most(
                "resource-cost/information-inverse round trip",
                information_gap,
                IDENTITY_TOLERANCE,
            ),
            CheckResult.at_most(
                "resource-cost/error-inverse round trip (relative)",
                error_gap,
                IDENTITY_TOLERANCE,
            ),
            CheckResult.equals(
                f"resource-cost/roundoff-law log-log slope ({model.name})", slope, -1.0, 0.05
            ),
        ]
        if integral and math.prod(rounded) <= bound:
            checks.append(
                CheckResult.at_most(
                    "resource-cost/integer-optimum rounded plan error ratio",
                    resource_cost.error_model(g, rounded) / best_error,
                    1.0 + IDENTITY_TOLERANCE,
                )
            )
        rows = [
            {
                "model": model.name,
                "n": cells,
                "measured_error": error,
                "predicted_error": resource_cost.predicted_error(gradients, 2.0 * math.log(cells)),
            }
            for cells, error in zip(ROUNDOFF_CELLS, errors)
        ]
        table = ReportTable.from_records(("model", "n", "measured_error", "predicted_error"), rows)
        summary = {
            "plan": plan.to_dict(),
            "rounded_plan": list(rounded),
            "exhaustive_plan": list(best_counts),
            "exhaustive_error": best_error,
            "slope": slope,
            "mean_gradients": list(gradients),
            "predicted_error_note": "scaling law; constant factor set by the measured mean gradients",
        }
        return SuiteOutcome(checks=checks, table=table, summary=summary)


SUITES: dict[str, type[SuiteUseCase]] = {
    suite.name: suite
    for suite in (
        VerifyBornUseCase,
        SampleUseCase,
        RegionUseCase,
        PatchesUseCase,
        NonMarkovUseCase,
        GroupUseCase,
        ResourceUseCase,
        FamilyCheckUseCase,
    )
}
