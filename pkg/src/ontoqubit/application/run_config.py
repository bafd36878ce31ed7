"""Run configuration shared by the CLI and the HTTP surface."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, fields
from typing import Any, Mapping

OUTPUT_FORMATS = ("json", "csv")
DEFAULT_INFORMATION = math.log(100.0)

_DEGREES = re.compile(r"^\s*([-+]?\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)\s*(?:deg|°)\s*$")
_LOGARITHM = re.compile(r"^\s*ln\s*\(?\s*(\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)\s*\)?\s*$")


def parse_angle(text: str | float) -> float:
    """Radians by default; a ``deg`` suffix marks degrees (``"53.13deg"``)."""

    if isinstance(text, (int, float)):
        return float(text)
    match = _DEGREES.match(text)
    if match:
        return math.radians(float(match.group(1)))
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"Cannot read angle {text!r}; use radians or a 'deg' suffix.") from None


def parse_information(text: str | float) -> float:
    """Nats as a number, or ``ln<x>`` for the natural logarithm of ``x``."""

    if isinstance(text, (int, float)):
        return float(text)
    match = _LOGARITHM.match(text)
    if match:
        argument = float(match.group(1))
        if argument <= 0.0:
            raise ValueError("Logarithm argument must be positive.")
        return math.log(argument)
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"Cannot read information budget {text!r}.") from None


def parse_gradients(text: str | list | tuple) -> tuple[float, ...]:
    """Comma-separated gradient magnitudes, e.g. ``"1,4"``."""

    if isinstance(text, (list, tuple)):
        return tuple(float(value) for value in text)
    try:
        return tuple(float(part) for part in str(text).split(",") if part.strip())
    except ValueError:
        raise ValueError(f"Cannot read gradient list {text!r}.") from None


@dataclass(frozen=True)
class RunConfig:
    """Options of one suite run; ``None`` means the suite's own default."""

    suite: str
    seed: int | None = None
    theta0: float | None = None
    s: float | None = None
    samples: int | None = None
    pairs: int = 20
    grid: int | None = None
    g0: int = 16
    g1: int = 16
    budget: int | None = None
    states: int = 100
    g: tuple[float, ...] = (1.0, 4.0)
    info: float = DEFAULT_INFORMATION
    model: str = "base"
    output_format: str = "json"

    def __post_init__(self) -> None:
        if self.seed is not None and self.seed < 0:
            raise ValueError("Seed must be non-negative.")
        if self.suite == "sample" and self.seed is None:
            raise ValueError("The sample suite requires an explicit --seed.")
        if (self.theta0 is None) != (self.s is None):
            raise ValueError("theta0 and s must be given together.")
        for name in ("samples", "grid", "budget"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be a positive integer.")
        for name in ("pairs", "g0", "g1", "states"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer.")
        if self.model not in ("base", "family"):
            raise ValueError("model must be 'base' or 'family'.")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {OUTPUT_FORMATS}.")

    def to_dict(self) -> dict[str, Any]:
        """Config echo with sorted keys; the output format is not part of it."""

        payload = {
            item.name: getattr(self, item.name)
            for item in fields(self)
            if item.name != "output_format"
        }
        payload["g"] = list(self.g)
        return dict(sorted(payload.items()))

    @classmethod
    def from_mapping(cls, suite: str, data: Mapping[str, Any] | None) -> "RunConfig":
        """Build a config from JSON-style overrides; unknown keys are rejected."""

        data = dict(data or {})
        known = {item.name for item in fields(cls)} - {"suite"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {', '.join(unknown)}.")
        if "theta0" in data and data["theta0"] is not None:
            data["theta0"] = parse_angle(data["theta0"])
        if "s" in data and data["s"] is not None:
            data["s"] = float(data["s"])
        if "info" in data:
            data["info"] = parse_information(data["info"])
        if "g" in data:
            data["g"] = parse_gradients(data["g"])
        for name in ("seed", "samples", "pairs", "grid", "g0", "g1", "budget", "states"):
            if name in data and data[name] is not None:
                value = data[name]
                if isinstance(value, bool) or not isinstance(value, (int, str)):
                    raise ValueError(f"{name} must be an integer.")
                try:
                    data[name] = int(value)
                except ValueError:
                    raise ValueError(f"{name} must be an integer.") from None
        return cls(suite=suite, **data)
