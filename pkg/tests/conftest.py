"""Shared fixtures and the acceptance-line reporter.

Acceptance tests register one human-readable pass/fail line per criterion;
the lines are printed in the terminal summary so they are visible even
under captured output.
"""

from __future__ import annotations

import random

import pytest

from tlaction import Fuel, builtin_group, canonical_numbering

_CRITERION_LINES: list[str] = []


def record_criterion(line: str) -> None:
    _CRITERION_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERION_LINES:
        terminalreporter.ensure_newline()
        terminalreporter.section("acceptance criteria")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)


@pytest.fixture
def big_fuel() -> Fuel:
    return Fuel(10_000_000)


@pytest.fixture(scope="session")
def z_numbering():
    return canonical_numbering(builtin_group("Z"))


@pytest.fixture(scope="session")
def z2_numbering():
    return canonical_numbering(builtin_group("Z2"))
