import pytest

_CRITERIA: dict[str, bool] = {}


@pytest.fixture
def criterion(request):
    """Record the pass/fail outcome of an acceptance criterion by name."""
    name = request.node.get_closest_marker("criterion").args[0]

    def record(passed: bool, detail: str = "") -> bool:
        _CRITERIA[name] = passed
        line = f"[{'PASS' if passed else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
        print(line)
        return passed

    return record


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"{'PASS' if _CRITERIA[name] else 'FAIL'}  {name}")
