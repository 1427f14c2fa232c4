import pytest

from netevo.graph import build_graph


@pytest.fixture
def hand_graph():
    return build_graph(3, [(0, 1, 2.0), (0, 2, -1.0), (1, 2, 3.0)])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
