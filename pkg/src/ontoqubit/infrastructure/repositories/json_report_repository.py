"""Repository storing suite reports as individual JSON files."""
from __future__ import annotations

import json
import re
from pathlib import Path

from ontoqubit.domain.models.report import Report
from ontoqubit.domain.repositories.report_repository import ReportRepository

_SUITE_NAME = re.compile(r"^[a-z][a-z0-9-]*$")


class JsonReportRepository(ReportRepository):
    """Persist the latest report of each suite inside a directory of JSON files."""

    def __init__(self, directory_path: Path) -> None:
        """Initialize the repository with the directory where files are stored."""

        self._directory_path = directory_path
        self._directory_path.mkdir(parents=True, exist_ok=True)

    def save(self, report: Report) -> None:
        """Serialize and persist the provided report."""

        file_path = self._build_file_path(report.suite)
        with file_path.open("w", encoding="utf-8") as output_file:
            json.dump(report.to_dict(), output_file, ensure_ascii=False, indent=2)

    def get_last(self, suite: str) -> Report | None:
        """Load the report stored for ``suite`` if present."""

        file_path = self._build_file_path(suite)
        if not file_path.exists():
            return None
        with file_path.open("r", encoding="utf-8") as input_file:
            data = json.load(input_file)
        return Report.from_dict(data)

    def delete_last(self, suite: str) -> bool:
        """Remove the JSON file for ``suite`` when present."""

        file_path = self._build_file_path(suite)
        if not file_path.exists():
            return False
        file_path.unlink()
        return True

    def _build_file_path(self, suite: str) -> Path:
        """Return the path where reports of ``suite`` are stored."""

        if not _SUITE_NAME.match(suite):
            raise ValueError(f"Invalid suite name {suite!r}.")
        return self._directory_path / f"report_{suite}.json"
