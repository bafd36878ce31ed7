"""Domain models describing verification reports."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence


@dataclass(frozen=True)
class CheckResult:
    """A named numerical check with its explicit tolerance."""

    name: str
    value: float
    tol: float
    passed: bool

    @classmethod
    def at_most(cls, name: str, value: float, tol: float) -> "CheckResult":
        """Pass when ``value <= tol``."""

        return cls(name=name, value=float(value), tol=float(tol), passed=bool(value <= tol))

    @classmethod
    def at_least(cls, name: str, value: float, threshold: float) -> "CheckResult":
        """Pass when ``value >= threshold``."""

        return cls(
            name=name, value=float(value), tol=float(threshold), passed=bool(value >= threshold)
        )

    @classmethod
    def equals(cls, name: str, value: float, expected: float, tol: float = 0.0) -> "CheckResult":
        """Pass when ``|value - expected| <= tol``; the deviation is reported as value."""

        deviation = abs(float(value) - float(expected))
        return cls(name=name, value=deviation, tol=float(tol), passed=bool(deviation <= tol))

    def to_dict(self) -> dict[str, Any]:
        """Return the ``{name, value, tol, pass}`` representation."""

        return {"name": self.name, "value": self.value, "tol": self.tol, "pass": self.passed}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "CheckResult":
        """Create a check from its serialized representation."""

        if not isinstance(data, Mapping):
            raise ValueError("Check data must be a mapping.")
        try:
            return cls(
                name=str(data["name"]),
                value=float(data["value"]),
                tol=float(data["tol"]),
                passed=bool(data["pass"]),
            )
        except (KeyError, TypeError, ValueError):
            raise ValueError("Check requires name, value, tol and pass.") from None


@dataclass(frozen=True)
class ReportTable:
    """Plot-ready table: fixed column names and rows of scalar values."""

    columns: tuple[str, ...]
    rows: tuple[tuple[Any, ...], ...] = ()

    def __post_init__(self) -> None:
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise ValueError(
                    f"Table row has {len(row)} values but {width} columns are declared."
                )

    @classmethod
    def from_records(cls, columns: Sequence[str], records: Sequence[Mapping[str, Any]]) -> "ReportTable":
        """Build a table picking ``columns`` from each record, in order."""

        return cls(
            columns=tuple(columns),
            rows=tuple(tuple(record[column] for column in columns) for record in records),
        )

    def to_dict(self) -> dict[str, Any]:
        return {"columns": list(self.columns), "rows": [list(row) for row in self.rows]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ReportTable":
        if not isinstance(data, Mapping):
            raise ValueError("Table data must be a mapping.")
        columns = data.get("columns")
        rows = data.get("rows", [])
        if not isinstance(columns, list) or not isinstance(rows, list):
            raise ValueError("Table requires 'columns' and 'rows' lists.")
        return cls(columns=tuple(str(c) for c in columns), rows=tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class Report:
    """Outcome of one suite run; ``passed`` is the conjunction of its checks."""

    version: int
    suite: str
    config: Mapping[str, Any]
    checks: tuple[CheckResult, ...]
    table: ReportTable | None = None
    summary: Mapping[str, Any] = field(default_factory=dict)
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_checks(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def body_dict(self) -> dict[str, Any]:
        """Serialized report without the wall-time field."""

        return {
            "version": self.version,
            "suite": self.suite,
            "config": dict(self.config),
            "checks": [check.to_dict() for check in self.checks],
            "table": self.table.to_dict() if self.table is not None else None,
            "summary": dict(self.summary),
        }

    def to_dict(self) -> dict[str, Any]:
        """Return a JSON-serializable representation with stable key order."""

        payload = self.body_dict()
        payload["elapsed_ms"] = self.elapsed_ms
        return payload

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Report":
        """Create a report from its serialized representation."""

        if not isinstance(data, Mapping):
            raise ValueError("Report data must be a mapping.")
        checks_raw = data.get("checks")
        if not isinstance(checks_raw, list):
            raise ValueError("Report requires a 'checks' list.")
        config = data.get("config", {})
        if not isinstance(config, Mapping):
            raise ValueError("Report 'config' must be a mapping.")
        table_raw = data.get("table")
        summary = data.get("summary") or {}
        if not isinstance(summary, Mapping):
            raise ValueError("Report 'summary' must be a mapping.")
        elapsed = float(data.get("elapsed_ms", 0.0))
        try:
            version = int(data["version"])
            suite = str(data["suite"])
        except (KeyError, TypeError, ValueError):
            raise ValueError("Report requires 'version' and 'suite'.") from None
        return cls(
            version=version,
            suite=suite,
            config=dict(config),
            checks=tuple(CheckResult.from_dict(item) for item in checks_raw),
            table=ReportTable.from_dict(table_raw) if table_raw is not None else None,
            summary=dict(summary),
            elapsed_ms=elapsed if math.isfinite(elapsed) else 0.0,
        )
