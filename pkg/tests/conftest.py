import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from compat import profiles  # noqa: E402


@pytest.fixture
def complement_trio():
    """[0]*6, [10]*6, [5]*6: the first two are each other's optimum."""
    return [profiles.validate_profile(f"p{i}", [v] * 6) for i, v in enumerate((0, 10, 5))]


ACCEPTANCE_LINES = []


def record_criterion(number, title, passed, detail=""):
    """Log one acceptance line; the line is printed in the terminal summary."""
    status = "PASS" if passed else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
