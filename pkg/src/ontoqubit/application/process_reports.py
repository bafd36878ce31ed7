"""Use cases for running suites and retrieving their stored reports."""
from __future__ import annotations

from typing import Any, Mapping

from ontoqubit.application.run_config import RunConfig
from ontoqubit.application.suites import SUITES
from ontoqubit.config.settings import Settings
from ontoqubit.domain.models.report import Report
from ontoqubit.domain.repositories.report_repository import ReportRepository


class UnknownSuiteError(LookupError):
    """Signal a suite name outside the registered suites."""


def suite_names() -> list[str]:
    return sorted(SUITES)


class RunSuiteUseCase:
    """Run one suite and persist its report."""

    def __init__(self, repository: ReportRepository, settings: Settings | None = None) -> None:
        """Initialize the use case with the repository and optional settings."""

        self._repository = repository
        self._settings = settings

    def execute(self, suite: str, overrides: Mapping[str, Any] | None = None) -> Report:
        """Build the run configuration, execute the suite and store the report."""

        try:
            suite_class = SUITES[suite]
        except KeyError:
            raise UnknownSuiteError(f"Unknown suite {suite!r}.") from None
        config = RunConfig.from_mapping(suite, overrides)
        report = suite_class(self._settings).execute(config)
        self._repository.save(report)
        return report


class RetrieveReportUseCase:
    """Retrieve the last stored report of a suite."""

    def __init__(self, repository: ReportRepository) -> None:
        self._repository = repository

    def execute(self, suite: str) -> Report | None:
        """Return the stored report or ``None`` when the suite has not run yet."""

        if suite not in SUITES:
            raise UnknownSuiteError(f"Unknown suite {suite!r}.")
        return self._repository.get_last(suite)


class DeleteReportUseCase:
    """Remove the last stored report of a suite."""

    def __init__(self, repository: ReportRepository) -> None:
        self._repository = repository

    def execute(self, suite: str) -> bool:
        if suite not in SUITES:
            raise UnknownSuiteError(f"Unknown suite {suite!r}.")
        return self._repository.delete_last(suite)
