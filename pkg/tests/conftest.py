from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from polyknot.cli import parse_knot_file

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "polyknot",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("polyknot")

ACCEPTANCE_LINES: list[str] = []


def load_knot(name: str):
    return parse_knot_file((DATA / name).read_text())


def load_pd_codes() -> dict[str, list[list[int]]]:
    return json.loads((DATA / "pd_codes.json").read_text())


@pytest.fixture(scope="session")
def fig8():
    return load_knot("figure_eight.json")[0]


@pytest.fixture(scope="session")
def trefoil():
    return load_knot("trefoil.json")[0]


@pytest.fixture(scope="session")
def pd_codes():
    return load_pd_codes()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
