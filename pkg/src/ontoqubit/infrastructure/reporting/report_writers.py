"""Serialize reports as JSON documents or plot-ready CSV tables."""
from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path

from ontoqubit.domain.models.report import Report

logger = logging.getLogger(__name__)

CHECKS_HEADER = ("name", "value", "tol", "pass")


class ReportWriteError(Exception):
    """Signal that a report could not be written to its destination."""


class JsonReportWriter:
    """Render reports as indented JSON with a fixed key order."""

    def render(self, report: Report) -> str:
        return json.dumps(report.to_dict(), ensure_ascii=False, indent=2) + "\n"


class CsvReportWriter:
    """Render the report's table, or its checks when the suite has no table."""

    def render(self, report: Report) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if report.table is not None:
            writer.writerow(report.table.columns)
            writer.writerows(report.table.rows)
        else:
            writer.writerow(CHECKS_HEADER)
            for check in report.checks:
                writer.writerow([check.name, check.value, check.tol, int(check.passed)])
        return buffer.getvalue()


WRITERS = {"json": JsonReportWriter, "csv": CsvReportWriter}


def render_report(report: Report, output_format: str) -> str:
    try:
        writer = WRITERS[output_format]()
    except KeyError:
        raise ValueError(f"Unknown report format {output_format!r}.") from None
    return writer.render(report)


def emit_report(report: Report, output_format: str, path: Path | None = None) -> str:
    """Render ``report`` and write it to ``path``; the rendered text is returned."""

    text = render_report(report, output_format)
    if path is not None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as write_error:
            raise ReportWriteError(f"Cannot write report to {path}: {write_error}") from write_error
        logger.info("Report for suite %s written to %s", report.suite, path)
    return text
