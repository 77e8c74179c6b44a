import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from berezin import kernel  # noqa: E402


@pytest.fixture(params=sorted(kernel.backends()))
def backend(request):
    previous = kernel.use(request.param)
    yield request.param
    kernel.use(previous)


@pytest.fixture
def rng(request):
    return random.Random(request.node.name)


_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        prev = _criteria.get(name)
        if prev is None or not report.passed:
            _criteria[name] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        outcome, secs = _criteria[name]
        number, label = name[len("test_criterion_"):].split("_", 1)
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {int(number):2d} {status}  {label.replace('_', ' ')} ({secs:.1f}s)")
