import pytest

# criterion number -> (passed, summary, seconds); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str, float]] = {}


@pytest.fixture
def record():
    def _record(number: int, passed: bool, summary: str, seconds: float) -> None:
        ACCEPTANCE[number] = (passed, summary, seconds)
        print(f"{'PASS' if passed else 'FAIL'} criterion {number}: {summary} ({seconds:.1f} s)")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, summary, seconds = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {number}: {summary} ({seconds:.1f} s)")
