"""Collects acceptance outcomes and prints one line per criterion."""

import pytest

_CRITERIA: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): acceptance criterion the test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label, title = marker.args
    entry = _CRITERIA.setdefault(label, {"title": title, "passed": True, "seen": False})
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        entry["seen"] = True
        entry["passed"] &= report.passed


def _order(label):
    head = "".join(ch for ch in label if ch.isdigit())
    return int(head), label


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=_order):
        entry = _CRITERIA[label]
        if not entry["seen"]:
            continue
        status = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {label:<3} {entry['title']}")
