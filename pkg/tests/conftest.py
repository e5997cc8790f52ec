import pytest

_OUTCOMES = []


@pytest.fixture
def record_criterion():
    """Record one acceptance outcome for the end-of-session summary."""

    def record(order: int, title: str, passed: bool, detail: str = "") -> bool:
        _OUTCOMES.append((order, title, bool(passed), detail))
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for order, title, passed, detail in sorted(_OUTCOMES):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {order:>2}. {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
