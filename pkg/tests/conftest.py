import numpy as np
import pytest

from pinchlab.fixtures import FAMILY_8_5, FAMILY_8_18_W, FAMILY_8_18_W2


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def sol_8_5(rng):
    return FAMILY_8_5.solution(FAMILY_8_5.random_params(rng))


@pytest.fixture(params=[FAMILY_8_18_W, FAMILY_8_18_W2], ids=["w", "w2"])
def family_8_18(request):
    return request.param


# -- acceptance reporting -------------------------------------------------------

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[number] = (title, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, outcome = _CRITERIA[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {title}")
