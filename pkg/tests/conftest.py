import os

import pytest

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from wreathrep.laurent import LaurentRing

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PRIMES = (2, 3, 5)


@st.composite
def rings(draw, dims=(1, 2, 3)):
    return LaurentRing(draw(st.sampled_from(PRIMES)), draw(st.sampled_from(dims)))


@st.composite
def polys(draw, ring, max_terms=5, spread=3):
    exps = st.tuples(*[st.integers(-spread, spread)] * ring.d)
    terms = draw(st.dictionaries(exps, st.integers(0, ring.p - 1), max_size=max_terms))
    return ring.from_terms(terms)


@st.composite
def ring_and_polys(draw, n=2, dims=(1, 2, 3)):
    ring = draw(rings(dims))
    return (ring,) + tuple(draw(polys(ring)) for _ in range(n))


# -- acceptance summary ----------------------------------------------------

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    mark = getattr(report, "criterion", None)
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[mark[0]] = (mark[1], report.outcome, report.duration)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, outcome, duration = _CRITERIA[num]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {status}  ({duration:.2f}s)  {title}")
