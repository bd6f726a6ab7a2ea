from __future__ import annotations

import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

_criteria: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and not report.failed:
        return
    number, title = mark.args
    entry = _criteria.setdefault(str(number), {"title": title, "tests": {}})
    entry["tests"][item.name] = entry["tests"].get(item.name, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria, key=int):
        entry = _criteria[number]
        status = "PASS" if all(entry["tests"].values()) else "FAIL"
        failed = [name for name, ok in entry["tests"].items() if not ok]
        suffix = f"  (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"{status} criterion {number}: {entry['title']}{suffix}")
