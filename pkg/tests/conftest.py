import pytest

CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run E7 and other slow checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: needs --slow")
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.outcome != "passed"):
        return
    n, title = mark.args
    status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
    rank = {"SKIP": 0, "PASS": 1, "FAIL": 2}
    prev = CRITERIA.get(n)
    if prev is None or rank[status] > rank[prev[1]]:
        CRITERIA[n] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, status = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
