import os

import pytest
from hypothesis import HealthCheck, settings

from qorder import kernels
from qorder.quantale import builtin

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    # the backend fixture is meant to stay selected for every generated example
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.register_profile(
    "thorough",
    max_examples=400,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL = ("bool2", "c3", "c4", "lukasiewicz(4)")


@pytest.fixture(params=kernels.available())
def backend(request):
    """Run the test once per kernel backend."""
    previous = kernels.backend
    kernels.use(request.param)
    yield request.param
    kernels.use(previous)


@pytest.fixture(params=SMALL)
def Q(request):
    return builtin(request.param)


FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
