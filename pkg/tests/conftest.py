import pytest

# filled by tests/test_acceptance.py, one (label, passed, detail) per criterion
ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    def record(label, passed, detail=""):
        ACCEPTANCE_LINES.append((label, bool(passed), detail))
        print(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
        assert passed, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
