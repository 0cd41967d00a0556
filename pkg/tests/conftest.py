import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record a named acceptance check; the summary prints one line per criterion."""

    def record(number, title, ok, detail=""):
        checks = ACCEPTANCE.setdefault(number, {"title": title, "checks": []})
        checks["checks"].append((request.node.name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        entry = ACCEPTANCE[number]
        failed = [f"{name}: {detail}" for name, ok, detail in entry["checks"] if not ok]
        status = "PASS" if not failed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {entry['title']} ({len(entry['checks'])} checks)")
        for line in failed:
            terminalreporter.write_line(f"        failed {line}")
