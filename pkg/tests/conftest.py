import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=300, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# ---------------------------------------------------------------- acceptance summary

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test belongs to")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "failed": [], "ran": 0})
    if call.when == "call":
        entry["ran"] += 1
        if call.excinfo is not None:
            entry["failed"].append(item.callspec.id if hasattr(item, "callspec") else item.name)
    elif call.when == "setup" and call.excinfo is not None:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        verdict = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {n} ({e['title']}): {verdict}"
        if e["failed"]:
            line += " -- failing: " + ", ".join(e["failed"])
        terminalreporter.write_line(line)
