"""Pytest fixtures and the acceptance scoreboard."""

import random

import pytest

# One line per acceptance criterion, printed in the terminal summary so the
# scoreboard survives output capture.
scoreboard: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if scoreboard:
        terminalreporter.section("acceptance criteria")
        for line in scoreboard:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20260824)
