import pytest

_results: dict[str, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, text): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    label, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _results.setdefault(label, []).append((status, text))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_results, key=lambda s: (len(s), s)):
        statuses = [s for s, _ in _results[label]]
        text = _results[label][0][1]
        overall = "FAIL" if "FAIL" in statuses else ("PASS" if "PASS" in statuses else "SKIP")
        terminalreporter.write_line(f"{overall}  [{label}] {text}")
