"""Tests for run configuration parsing."""
from __future__ import annotations

import math

import pytest

from ontoqubit.application.run_config import (
    RunConfig,
    parse_angle,
    parse_gradients,
    parse_information,
)


def test_parse_angle_accepts_radians_and_degrees() -> None:
    """Plain numbers are radians; the deg suffix converts."""

    assert parse_angle("0.5") == 0.5
    assert parse_angle("90deg") == pytest.approx(math.pi / 2)
    assert parse_angle(1.25) == 1.25
    with pytest.raises(ValueError):
        parse_angle("half")


def test_parse_information_accepts_logarithms() -> None:
    """ln100 is the natural logarithm of 100."""

    assert parse_information("ln100") == pytest.approx(math.log(100.0))
    assert parse_information("ln(8)") == pytest.approx(math.log(8.0))
    assert parse_information("4.6") == 4.6
    with pytest.raises(ValueError):
        parse_information("lots")


def test_parse_gradients() -> None:
    """Comma lists and sequences both work."""

    assert parse_gradients("1,4") == (1.0, 4.0)
    assert parse_gradients([2, 3]) == (2.0, 3.0)
    with pytest.raises(ValueError):
        parse_gradients("1,x")


def test_sample_suite_requires_a_seed() -> None:
    """Monte-Carlo runs are always seeded explicitly."""

    with pytest.raises(ValueError):
        RunConfig(suite="sample")
    assert RunConfig(suite="sample", seed=3).seed == 3


@pytest.mark.parametrize(
    "overrides",
    [
        {"theta0": 1.0},
        {"seed": -1},
        {"grid": 0},
        {"model": "quantum"},
        {"output_format": "xml"},
        {"colour": "blue"},
        {"states": 2.5},
        {"states": True},
    ],
)
def test_invalid_overrides_raise(overrides) -> None:
    """Bad or unknown values are rejected."""

    with pytest.raises(ValueError):
        RunConfig.from_mapping("group", overrides)


def test_from_mapping_converts_strings() -> None:
    """JSON overrides use the same notations as the command line."""

    config = RunConfig.from_mapping(
        "region", {"theta0": "90deg", "s": "1", "info": "ln100", "g": "1,4", "grid": "24"}
    )

    assert config.theta0 == pytest.approx(math.pi / 2)
    assert config.s == 1.0
    assert config.info == pytest.approx(math.log(100.0))
    assert config.g == (1.0, 4.0)
    assert config.grid == 24


def test_to_dict_is_sorted_and_omits_format() -> None:
    """The config echo is stable."""

    payload = RunConfig(suite="resource").to_dict()

    assert list(payload) == sorted(payload)
    assert "output_format" not in payload
    assert payload["g"] == [1.0, 4.0]
