"""Grid allocation plans under an information budget."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

BUDGET_TOLERANCE = 1e-9


class NonPositiveGradientError(ValueError):
    """Signal a gradient magnitude that is zero or negative."""


@dataclass(frozen=True)
class AllocationPlan:
    """Per-dimension grid counts ``n`` for gradients ``g`` and budget ``information`` (nats)."""

    m: int
    g: tuple[float, ...]
    information: float
    n: tuple[float, ...]
    delta_e: float

    def __post_init__(self) -> None:
        if self.m != len(self.g) or self.m != len(self.n):
            raise ValueError("Plan dimension does not match its gradients and counts.")
        if any(count <= 0.0 for count in self.n):
            raise ValueError("Grid counts must be positive.")
        spent = sum(math.log(count) for count in self.n)
        if abs(spent - self.information) > BUDGET_TOLERANCE:
            raise ValueError(
                f"Grid counts spend {spent!r} nats, budget is {self.information!r}."
            )

    @property
    def information_bits(self) -> float:
        return self.information / math.log(2.0)

    @property
    def geometric_mean_gradient(self) -> float:
        return math.exp(sum(math.log(value) for value in self.g) / self.m)

    def to_dict(self) -> dict[str, Any]:
        return {
            "M": self.m,
            "g": list(self.g),
            "I": self.information,
            "I_bits": self.information_bits,
            "n": list(self.n),
            "deltaE": self.delta_e,
        }
