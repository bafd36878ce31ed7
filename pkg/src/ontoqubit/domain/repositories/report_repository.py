"""Abstract repository contract for suite reports."""
from __future__ import annotations

from abc import ABC, abstractmethod

from ontoqubit.domain.models.report import Report


class ReportRepository(ABC):
    """Define persistence operations available for suite reports."""

    @abstractmethod
    def save(self, report: Report) -> None:
        """Persist ``report`` as the latest report of its suite."""

    @abstractmethod
    def get_last(self, suite: str) -> Report | None:
        """Return the latest report stored for ``suite`` if present."""

    @abstractmethod
    def delete_last(self, suite: str) -> bool:
        """Remove the latest report of ``suite`` returning ``True`` when deleted."""
