# conftest.py
"""Shared strategies, helpers and markers for the test suite."""

import json
from itertools import combinations
from typing import Iterator, List

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graph import Graph

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive sweeps and large samples (deselect with -m 'not slow')")


@st.composite
def graphs(draw, min_order: int = 0, max_order: int = 8) -> Graph:
    """Random labeled graph with every pair decided by one drawn boolean."""
    n = draw(st.integers(min_value=min_order, max_value=max_order))
    pairs = list(combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, (pair for pair, bit in zip(pairs, bits) if bit))


@st.composite
def connected_graphs(draw, min_order: int = 1, max_order: int = 8) -> Graph:
    """Random spanning tree plus random extra edges."""
    n = draw(st.integers(min_value=min_order, max_value=max_order))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(min_value=0, max_value=v - 1))
        edges.add((u, v))
    for pair in combinations(range(n), 2):
        if pair not in edges and draw(st.booleans()):
            edges.add(pair)
    return Graph.from_edges(n, edges)


def all_graphs(order: int) -> Iterator[Graph]:
    from scanner import labeled_graphs
    return labeled_graphs(order)


def from_networkx(g: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(g.nodes()))}
    return Graph.from_edges(len(index), ((index[u], index[v]) for u, v in g.edges()))


def isomorphic(a: Graph, b: Graph) -> bool:
    return nx.is_isomorphic(a.to_networkx(), b.to_networkx())


def read_jsonl(text: str) -> List[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.fixture
def write_lines(tmp_path):
    """Write graph6 lines to a temporary file and return its path."""
    def write(lines, name="input.g6"):
        path = tmp_path / name
        path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        return str(path)
    return write
