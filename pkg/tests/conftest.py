import pytest

CRITERIA = {
    1: "table reproduction, degree 5",
    2: "table reproduction, degree 6",
    3: "degeneracy filters",
    4: "stabilizer orders",
    5: "block reduction certificates",
    6: "non-conjugacy",
    7: "ramification profiles",
    8: "smoothness thresholds",
    9: "parameter identification",
    10: "Hessian suite",
    11: "positive characteristic",
    12: "property suites",
}

_outcomes: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    if call.when != "call" and not (call.when == "setup" and call.excinfo is not None):
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    failed = call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception)
    _outcomes.setdefault(n, []).append("FAIL" if failed else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "FAIL" if "FAIL" in results else "PASS"
        terminalreporter.write_line(f"criterion {n:2d} {status:7s} {CRITERIA[n]} ({len(results or [])} checks)")
