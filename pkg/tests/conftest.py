import pytest

_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _RESULTS.append((marker.args[0], marker.args[1], item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    by_number = {}
    for number, title, name, passed in _RESULTS:
        entry = by_number.setdefault(number, [title, []])
        entry[1].append((name, passed))
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(by_number):
        title, checks = by_number[number]
        ok = all(p for _, p in checks)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
        for name, passed in checks:
            terminalreporter.write_line(f"    {'pass' if passed else 'FAIL'}  {name}")
