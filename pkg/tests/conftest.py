"""Shared fixtures for the test suite."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

from cvdrec import load_calibration, load_catalog, parse_questionnaire

# Worked profile used across the suite: 49-year-old female smoker with high
# systolic pressure, elevated BMI, inactivity and an unhealthy diet.
WORKED_EXAMPLE = {
    "x1": 0,
    "x2": 49,
    "x3": 170,
    "x4": 74,
    "x5": 0,
    "x6": 0,
    "x7": 0,
    "x8": 0,
    "x9": 0,
    "x10": 5.0,
    "x11": 3.0,
    "x12": 160,
    "x13": 4.8,
    "x14": 1,
    "x15": 1,
    "x16": 1,
    "x17": 0,
}


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def calibration():
    return load_calibration()


@pytest.fixture()
def worked_doc():
    return dict(WORKED_EXAMPLE)


@pytest.fixture()
def worked_record():
    return parse_questionnaire(WORKED_EXAMPLE)


@pytest.fixture(scope="session")
def fixtures_dir():
    return Path(__file__).parent / "fixtures"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print the acceptance criterion lines after the run summary."""
    module = sys.modules.get("tests.test_acceptance") or sys.modules.get("test_acceptance")
    lines = getattr(module, "REPORT", None) if module else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
