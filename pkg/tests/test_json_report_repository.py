"""Tests for the JSON report repository."""
from __future__ import annotations

import pytest

from ontoqubit.domain.models.report import CheckResult, Report
from ontoqubit.infrastructure.repositories.json_report_repository import JsonReportRepository


def _report(suite: str = "region") -> Report:
    return Report(
        version=1,
        suite=suite,
        config={"grid": 16},
        checks=(CheckResult.at_least("valid", 12, 1),),
        summary={"half_angle": 0.9273},
        elapsed_ms=3.0,
    )


def test_save_and_get_last(tmp_path) -> None:
    """Saved reports are returned unchanged."""

    repository = JsonReportRepository(tmp_path)
    report = _report()

    repository.save(report)

    stored = repository.get_last("region")
    assert stored is not None
    assert stored.to_dict() == report.to_dict()
    assert (tmp_path / "report_region.json").exists()


def test_get_last_without_report_returns_none(tmp_path) -> None:
    """Missing files mean no report yet."""

    assert JsonReportRepository(tmp_path).get_last("group") is None


def test_save_replaces_previous_report(tmp_path) -> None:
    """Only the latest report of a suite is kept."""

    repository = JsonReportRepository(tmp_path)
    repository.save(_report())
    repository.save(Report(version=1, suite="region", config={"grid": 32}, checks=()))

    stored = repository.get_last("region")
    assert stored is not None
    assert stored.config == {"grid": 32}


def test_delete_last(tmp_path) -> None:
    """Deletion removes the file once."""

    repository = JsonReportRepository(tmp_path)
    repository.save(_report())

    assert repository.delete_last("region") is True
    assert repository.delete_last("region") is False
    assert repository.get_last("region") is None


@pytest.mark.parametrize("suite", ["../escape", "Region", "", "a/b"])
def test_invalid_suite_names_are_rejected(tmp_path, suite: str) -> None:
    """Suite names cannot leave the storage directory."""

    with pytest.raises(ValueError):
        JsonReportRepository(tmp_path).get_last(suite)
