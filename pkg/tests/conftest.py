import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "gainmat",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "gainmat"))

_ACCEPTANCE = []


@pytest.fixture
def acceptance_log():
    """Record one summary line per acceptance criterion."""

    def record(number: int, name: str, ok: bool, detail: str):
        line = f"criterion {number} [{name}]: {'PASS' if ok else 'FAIL'} - {detail}"
        _ACCEPTANCE.append((number, line))
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
