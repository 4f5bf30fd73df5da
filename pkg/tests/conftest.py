import sys
import random

import pytest

from c4star.graph_core import Graph


def random_graph(rng: random.Random, order: int, p: float) -> Graph:
    rows = [0] * order
    for u in range(order):
        for v in range(u + 1, order):
            if rng.random() < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(order, tuple(rows))


def brute_count_c4(g: Graph) -> int:
    """Count 4-cycles by looking at every 4-subset and its three possible cyclic orders."""
    from itertools import combinations

    total = 0
    for a, b, c, d in combinations(range(g.order), 4):
        for w, x, y, z in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            if g.has_edge(w, x) and g.has_edge(x, y) and g.has_edge(y, z) and g.has_edge(z, w):
                total += 1
    return total


@pytest.fixture
def rng():
    return random.Random(20240501)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.format_line(i))
