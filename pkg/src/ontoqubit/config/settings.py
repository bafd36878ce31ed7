"""Application configuration helpers."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    """Holds configuration values for the toolkit."""

    data_dir: Path = Path("data")
    reports_directory_name: str = "reports"
    threads: int = 1
    report_schema_version: int = 1
    app_version: str = "0.1.0"
    api_version: str = "v1"
    default_solver_budget: int = 50_000
    default_samples: int = 1_000_000

    @property
    def reports_directory(self) -> Path:
        """Return the directory where suite reports are stored."""

        return self.data_dir / self.reports_directory_name

    @property
    def api_prefix(self) -> str:
        """Return the URL prefix used for versioned API routes."""

        return f"/api/{self.api_version}"


def get_settings() -> Settings:
    """Provide settings, applying ``ONTOQUBIT_*`` environment overrides."""

    settings = Settings()

    data_dir = os.getenv("ONTOQUBIT_DATA_DIR")
    if data_dir:
        settings = replace(settings, data_dir=Path(data_dir).expanduser())

    threads_raw = os.getenv("ONTOQUBIT_THREADS")
    if threads_raw:
        try:
            threads = int(threads_raw)
        except ValueError:
            threads = 0
        if threads > 0:
            settings = replace(settings, threads=threads)
        else:
            logger.warning("Ignoring invalid ONTOQUBIT_THREADS=%r", threads_raw)

    return settings
