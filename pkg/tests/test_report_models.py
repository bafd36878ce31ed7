"""Tests for the report domain models."""
from __future__ import annotations

import pytest

from ontoqubit.domain.models.report import CheckResult, Report, ReportTable


def _build_report(*checks: CheckResult) -> Report:
    return Report(
        version=1,
        suite="resource",
        config={"seed": 0},
        checks=checks,
        table=ReportTable(columns=("n", "error"), rows=((16, 0.1), (32, 0.05))),
        summary={"slope": -1.0},
        elapsed_ms=12.5,
    )


def test_check_constructors_apply_their_direction() -> None:
    """at_most, at_least and equals compare against the tolerance."""

    assert CheckResult.at_most("residual", 1e-14, 1e-12).passed
    assert not CheckResult.at_most("residual", 1e-3, 1e-12).passed
    assert CheckResult.at_least("gap", 0.5, 1e-3).passed
    assert not CheckResult.at_least("gap", 1e-4, 1e-3).passed

    equality = CheckResult.equals("dimension", 10, 10)
    assert equality.passed
    assert equality.value == 0.0
    assert not CheckResult.equals("dimension", 9, 10).passed


def test_report_passes_only_when_every_check_passes() -> None:
    """A single failure fails the report."""

    good = CheckResult.at_most("a", 0.0, 1.0)
    bad = CheckResult.at_most("b", 2.0, 1.0)

    assert _build_report(good).passed
    report = _build_report(good, bad)
    assert not report.passed
    assert report.failed_checks() == [bad]


def test_report_round_trip_keeps_body() -> None:
    """to_dict and from_dict preserve every field, summary included."""

    report = _build_report(CheckResult.at_most("a", 0.0, 1.0))

    payload = report.to_dict()
    restored = Report.from_dict(payload)

    assert list(payload) == ["version", "suite", "config", "checks", "table", "summary", "elapsed_ms"]
    assert payload["checks"][0] == {"name": "a", "value": 0.0, "tol": 1.0, "pass": True}
    assert restored.body_dict() == report.body_dict()
    assert restored.elapsed_ms == 12.5


def test_body_dict_omits_elapsed_time() -> None:
    """Wall time is not part of the deterministic body."""

    assert "elapsed_ms" not in _build_report().body_dict()


def test_table_rejects_ragged_rows() -> None:
    """Rows must match the declared columns."""

    with pytest.raises(ValueError):
        ReportTable(columns=("a", "b"), rows=((1,),))


@pytest.mark.parametrize(
    "payload",
    [
        [],
        {"version": 1, "suite": "x"},
        {"version": 1, "suite": "x", "checks": [{"name": "a"}]},
        {"version": 1, "suite": "x", "checks": [], "summary": [1]},
        {"suite": "x", "checks": []},
    ],
)
def test_invalid_report_payloads_raise(payload) -> None:
    """Malformed documents are rejected with ValueError."""

    with pytest.raises(ValueError):
        Report.from_dict(payload)
