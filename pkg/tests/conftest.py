import pytest

_results: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, seconds): acceptance criterion with its time limit")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args[0], mark.args[1]
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    prev = _results.get(number, (title, True))
    _results[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, ok = _results[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
