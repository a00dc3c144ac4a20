import pytest

from qradii.qseries import QDomainParams

_criteria: dict[int, list[bool]] = {}
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    n, title = mark.args
    _titles[n] = title
    _criteria.setdefault(n, []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status = "PASS" if all(_criteria[n]) else "FAIL"
        terminalreporter.write_line(f"{status} criterion {n}: {_titles[n]}")


@pytest.fixture
def p0():
    return QDomainParams(0.0, 0.5)
