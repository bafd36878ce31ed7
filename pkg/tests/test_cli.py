"""Tests for the command-line orchestrator."""
from __future__ import annotations

import json

from ontoqubit import cli


def test_resource_run_writes_report(tmp_path, monkeypatch) -> None:
    """A passing suite exits 0 and writes its report to --output."""

    monkeypatch.setenv("ONTOQUBIT_DATA_DIR", str(tmp_path))
    target = tmp_path / "resource.json"

    status = cli.run(["resource", "--g", "1,4", "--info", "ln100", "--output", str(target)])

    document = json.loads(target.read_text(encoding="utf-8"))
    assert document["suite"] == "resource"
    assert document["summary"]["rounded_plan"] == [5, 20]
    assert status == (cli.EXIT_OK if all(c["pass"] for c in document["checks"]) else cli.EXIT_FAILED_CHECKS)


def test_csv_output_goes_to_stdout(capsys) -> None:
    """Without --output the report is printed."""

    cli.run(["resource", "--format", "csv"])

    header = capsys.readouterr().out.splitlines()[0]
    assert header == "model,n,measured_error,predicted_error"


def test_unknown_flag_is_a_usage_error() -> None:
    """argparse failures map to exit status 2."""

    assert cli.run(["resource", "--colour", "blue"]) == cli.EXIT_USAGE


def test_unknown_suite_is_a_usage_error() -> None:
    """Only registered suites are subcommands."""

    assert cli.run(["astrology"]) == cli.EXIT_USAGE


def test_sample_without_seed_is_a_usage_error() -> None:
    """Monte-Carlo runs need an explicit seed."""

    assert cli.run(["sample", "--pairs", "2", "--samples", "10"]) == cli.EXIT_USAGE


def test_invalid_family_parameters_are_a_usage_error() -> None:
    """s below |cos theta0| is rejected before any work is done."""

    assert cli.run(["region", "--theta0", "0.2", "--s", "0.1", "--grid", "8"]) == cli.EXIT_USAGE


def test_help_exits_cleanly() -> None:
    """--help is not an error."""

    assert cli.run(["--help"]) == cli.EXIT_OK


def _body(path) -> dict:
    document = json.loads(path.read_text(encoding="utf-8"))
    document.pop("elapsed_ms")
    return document


def test_seeded_runs_write_identical_bodies(tmp_path, monkeypatch) -> None:
    """Two runs with the same arguments differ only in their timing."""

    monkeypatch.setenv("ONTOQUBIT_DATA_DIR", str(tmp_path))
    runs = {
        "sample": ["--seed", "4", "--pairs", "3", "--samples", "2000"],
        "verify-born": ["--grid", "12"],
        "resource": [],
    }

    for suite, arguments in runs.items():
        first = tmp_path / f"{suite}-first.json"
        second = tmp_path / f"{suite}-second.json"
        cli.run([suite, *arguments, "--output", str(first)])
        cli.run([suite, *arguments, "--output", str(second)])

        assert _body(first) == _body(second)
        assert _body(first)["suite"] == suite
