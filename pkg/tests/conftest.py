import pytest

_CRITERIA: dict[str, tuple[str, bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance criterion outcome; printed in the terminal summary."""

    def record(label, name: str, passed: bool, detail: str) -> bool:
        _CRITERIA[str(label)] = (name, bool(passed), detail)
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    key = lambda label: (int("".join(ch for ch in label if ch.isdigit())), label)  # noqa: E731
    for label in sorted(_CRITERIA, key=key):
        name, passed, detail = _CRITERIA[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  C{label:<8} {name}: {detail}")
