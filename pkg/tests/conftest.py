"""Shared fixtures and the acceptance-criterion reporting hook.

Acceptance tests register a per-criterion verdict through the ``criterion``
fixture; after the run a PASS/FAIL line is printed for each criterion so the
gate can be read off the terminal output directly.
"""

import pytest

_CRITERIA: dict[int, tuple[bool, str]] = {}


class CriterionRecorder:
    """Collects the outcome of one numbered acceptance criterion."""

    def __init__(self, number: int):
        self.number = number

    def record(self, passed: bool, detail: str) -> None:
        _CRITERIA[self.number] = (bool(passed), detail)

    def check(self, passed: bool, detail: str) -> None:
        """Record the verdict, then assert it (so pytest also sees the failure)."""
        self.record(passed, detail)
        assert passed, f"ACCEPTANCE CRITERION {self.number}: {detail}"


@pytest.fixture
def criterion(request):
    """Factory fixture: ``criterion(i)`` returns the recorder for criterion i."""

    def factory(number: int) -> CriterionRecorder:
        return CriterionRecorder(number)

    return factory


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        passed, detail = _CRITERIA[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"ACCEPTANCE CRITERION {number}: {verdict} - {detail}"
        )
