import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> (passed, note); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, passed: bool, note: str = "") -> None:
        ACCEPTANCE_RESULTS[number] = (passed, note)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, note = ACCEPTANCE_RESULTS[number]
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}"
        if note:
            line += f"  {note}"
        terminalreporter.write_line(line)
