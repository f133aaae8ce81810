import pytest

_acceptance: dict[int, str] = {}


@pytest.fixture
def report():
    """Record the outcome line for one acceptance criterion; shown in the terminal summary."""

    def record(number: int, title: str, passed: bool, seconds: float, limit: float, detail: str = ""):
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number:>2} {status}  {title}  ({seconds:.2f}s, limit {limit:g}s)"
        if detail:
            line += f"  {detail}"
        _acceptance[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        terminalreporter.write_line(_acceptance[number])
