import random

import pytest
from hypothesis import settings

from raagcc.graphs import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def graph_from_bits(n: int, bits: int) -> Graph:
    labels = [f"x{i}" for i in range(n)]
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if bits >> k & 1:
                edges.append((labels[i], labels[j]))
            k += 1
    return Graph.from_edges(labels, edges)


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for index in sorted(LINES):
            terminalreporter.write_line(LINES[index])
