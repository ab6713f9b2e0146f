import pytest

ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    def record(number, passed, note=""):
        ACCEPTANCE[number] = (bool(passed), note)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, note = ACCEPTANCE[number]
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}"
        terminalreporter.write_line(f"{line}  {note}" if note else line)
