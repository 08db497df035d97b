"""Shared fixtures: the acceptance verdict recorder.

The acceptance tests each record a one line PASS/FAIL verdict; printing
them from the terminal-summary hook keeps the lines visible even though
pytest captures stdout while the tests run.
"""

import pytest

VERDICTS = []


@pytest.fixture
def verdict():
    def record(line):
        VERDICTS.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
