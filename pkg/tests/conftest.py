import pytest
from hypothesis import HealthCheck, settings

from derham.corpus import builtin, corpus

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture
def triangle_boundary():
    return builtin("triangle-boundary")


@pytest.fixture
def tetra_boundary():
    return builtin("tetrahedron-boundary")


CORPUS = corpus()
CORPUS_IDS = [X.name for X in CORPUS]


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.summary_lines():
        terminalreporter.write_line(line)
