from __future__ import annotations

import sys

import pytest
from hypothesis import HealthCheck, settings

from subshift.presets import preset

settings.register_profile(
    "repro", derandomize=True, deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repro")


@pytest.fixture
def gm():
    return preset("golden-mean")


@pytest.fixture
def full():
    return preset("full2")


@pytest.fixture
def single():
    return preset("singleton")


@pytest.fixture
def ray():
    return preset("two-headed-ray")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
