import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

# reproducible example generation across runs
settings.register_profile("naryalg", derandomize=True)
settings.load_profile("naryalg")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
