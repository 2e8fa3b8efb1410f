import pytest
from hypothesis import settings

from fiscap import make_model, Aligned, TwoState

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture
def fig1():
    """w = c = 1, sigma = 0.1, alpha = 1.5, kappa = 0.2."""
    return make_model(1.0, 1.0, 0.1, 0.2, Aligned(1.5))


@pytest.fixture
def weak_high():
    return TwoState(0.2, 0.6, 0.5)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance as acc

    if not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acc.RESULTS):
        ok, detail = acc.RESULTS[n]
        doc = acc.CRITERIA[n].__doc__.strip().splitlines()[0]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {doc}  [{detail}]")
