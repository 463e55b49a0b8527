import pytest

from ovalcode.gf2m import field_new
from ovalcode.nmds import build_generator, dual_distance_and_weight3
from ovalcode.ovalpoly import make_family

_acceptance = []


@pytest.fixture(scope="session")
def ctx3():
    return field_new(3)


@pytest.fixture(scope="session")
def ctx5():
    return field_new(5)


@pytest.fixture(scope="session")
def code3(ctx3):
    return build_generator(make_family("translation", ctx3, 2))


@pytest.fixture(scope="session")
def code5(ctx5):
    return build_generator(make_family("segre", ctx5))


@pytest.fixture(scope="session")
def dual3(code3):
    return dual_distance_and_weight3(code3)


@pytest.fixture(scope="session")
def dual5(code5):
    return dual_distance_and_weight3(code5)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
