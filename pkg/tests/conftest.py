import functools

import pytest

from braidual import catalog


@functools.lru_cache(maxsize=None)
def instance(name):
    return catalog.lookup(name)


def hopf(name):
    return catalog.as_hopf_or_bialgebra(instance(name))


FLAT = ["zn:1", "zn:2", "zn:3", "zn:4", "superline"]
GRADED = ["bline:q=1:deg=4", "bline:q=2:deg=4", "qplane:q=1:deg=3", "qplane:q=2:deg=3"]


@pytest.fixture(params=FLAT)
def flat_name(request):
    return request.param


_CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::test_criterion_")[1]
    number = int(name.split("_")[0])
    _CRITERIA[number] = (report.outcome, report.duration, name.split("_", 1)[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number in sorted(_CRITERIA):
        outcome, duration, title = _CRITERIA[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(
            f"criterion {number:2d}: {verdict}  {title.replace('_', ' ')}  ({duration:.2f} s)")
