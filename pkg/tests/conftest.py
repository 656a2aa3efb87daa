import pytest

from hadsub.catalog import representative_specs

# acceptance results keyed by criterion number, filled as tests report
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None and (report.when == "call" or report.failed or report.skipped):
        number, title = marker.args
        prev = _CRITERIA.get(number, (title, "PASS"))
        status = prev[1]
        if report.failed:
            status = "FAIL"
        elif report.skipped and status != "FAIL":
            status = "SKIP"
        _CRITERIA[number] = (title, status)
    return report


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}")


@pytest.fixture(scope="session")
def catalog():
    """Every representative catalog matrix, built once."""
    return [(spec.label(), spec.build()) for spec in representative_specs()]
