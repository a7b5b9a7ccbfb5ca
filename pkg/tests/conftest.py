import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from modcat import scalars  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True)
def _fresh_tolerance():
    scalars.set_tolerance(scalars.DEFAULT_TOLERANCE)
    yield
    scalars.set_tolerance(scalars.DEFAULT_TOLERANCE)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
