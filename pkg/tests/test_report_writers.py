"""Tests for the JSON and CSV report writers."""
from __future__ import annotations

import csv
import io
import json

import pytest

from ontoqubit.domain.models.report import CheckResult, Report, ReportTable
from ontoqubit.infrastructure.reporting.report_writers import (
    CHECKS_HEADER,
    ReportWriteError,
    emit_report,
    render_report,
)


def _report(table: ReportTable | None) -> Report:
    return Report(
        version=1,
        suite="group",
        config={"states": 3},
        checks=(CheckResult.equals("closure", 10, 10), CheckResult.at_most("fit", 0.5, 0.1)),
        table=table,
    )


def test_json_output_parses_back() -> None:
    """The JSON document holds the full report."""

    document = json.loads(render_report(_report(None), "json"))

    assert document["suite"] == "group"
    assert [check["pass"] for check in document["checks"]] == [True, False]


def test_csv_output_writes_the_table() -> None:
    """Tables are written with one header and a constant column count."""

    table = ReportTable(columns=("state", "fidelity"), rows=((0, 1.0), (1, 0.999999)))
    rows = list(csv.reader(io.StringIO(render_report(_report(table), "csv"))))

    assert rows[0] == ["state", "fidelity"]
    assert len(rows) == 3
    assert {len(row) for row in rows} == {2}


def test_csv_output_falls_back_to_checks() -> None:
    """Suites without a table list their checks."""

    rows = list(csv.reader(io.StringIO(render_report(_report(None), "csv"))))

    assert tuple(rows[0]) == CHECKS_HEADER
    assert rows[1][0] == "closure"
    assert rows[2][3] == "0"


def test_unknown_format_is_rejected() -> None:
    """Only json and csv are known."""

    with pytest.raises(ValueError):
        render_report(_report(None), "xml")


def test_emit_report_writes_file(tmp_path) -> None:
    """Reports land at the requested path, creating parents."""

    target = tmp_path / "nested" / "group.json"

    text = emit_report(_report(None), "json", target)

    assert target.read_text(encoding="utf-8") == text


def test_emit_report_wraps_os_errors(tmp_path) -> None:
    """Writing into a path whose parent is a file fails cleanly."""

    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")

    with pytest.raises(ReportWriteError):
        emit_report(_report(None), "json", blocker / "report.json")
