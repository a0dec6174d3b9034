import pytest

_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; call with (label, passed, detail)."""

    def record(label, passed, detail=""):
        _RESULTS.append((label, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}  {detail}")
