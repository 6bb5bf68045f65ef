import pytest

_criteria = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, description); the outcome is filled in after the test."""
    entry = {}

    def record(number, text):
        entry.update(number=number, text=text, nodeid=request.node.nodeid)
        _criteria.append(entry)

    yield record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        for e in _criteria:
            if e.get("nodeid") == item.nodeid:
                e["passed"] = rep.passed
                if rep.failed:
                    msg = str(call.excinfo.value).splitlines()
                    e["why"] = msg[0] if msg else call.excinfo.typename


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for e in sorted(_criteria, key=lambda e: e["number"]):
        status = "PASS" if e.get("passed") else "FAIL"
        line = f"[{status}] criterion {e['number']:>2}: {e['text']}"
        if not e.get("passed") and e.get("why"):
            line += f"  -- {e['why']}"
        terminalreporter.write_line(line)
