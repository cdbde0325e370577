import pytest

from affine_energy import PrimeField, RATIONALS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion, printed after the run."""
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, line in sorted(test_acceptance.RESULTS):
        terminalreporter.write_line(f"criterion {num:2d}: {line}")


@pytest.fixture(params=["Q", "F101", "F1009"])
def any_field(request):
    return {"Q": RATIONALS, "F101": PrimeField(101), "F1009": PrimeField(1009)}[request.param]


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def Q():
    return RATIONALS
