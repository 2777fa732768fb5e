"""Collects acceptance outcomes and prints one line per criterion."""

import pytest

_OUTCOMES: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        n, title = marker.args
        entry = _OUTCOMES.setdefault(n, {"title": title, "ok": True, "details": []})
        entry["ok"] &= report.passed
        entry["details"] += [v for k, v in item.user_properties if k == "detail"]
        if not report.passed:
            entry["details"].append(f"{item.name} {report.outcome}")


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        entry = _OUTCOMES[n]
        status = "PASS" if entry["ok"] else "FAIL"
        detail = "; ".join(entry["details"])
        line = f"ACCEPTANCE criterion {n}: {status} {entry['title']}"
        terminalreporter.write_line(f"{line} ({detail})" if detail else line)
