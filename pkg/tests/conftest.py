import itertools

import networkx as nx
import pytest
from hypothesis import strategies as st

from stclab.graph import build_graph
from stclab.reduction import build_reduction
from stclab.threepart import normalize_instance, validate_instance

D1 = (1, 30, (9, 10, 11))
YES2 = (2, 60, (16, 17, 19, 20, 23, 25))
NO2 = (2, 60, (17, 17, 17, 23, 23, 23))


@pytest.fixture(scope="session")
def d1():
    return build_reduction(normalize_instance(validate_instance(*D1)))


@pytest.fixture(scope="session")
def yes2():
    return build_reduction(normalize_instance(validate_instance(*YES2)))


@pytest.fixture(scope="session")
def no2():
    return build_reduction(normalize_instance(validate_instance(*NO2)))


@st.composite
def connected_graphs(draw, min_n=1, max_n=7):
    """Random connected graph: a random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = []
    for v in range(1, n):
        edges.append((draw(st.integers(0, v - 1)), v))
    pairs = list(itertools.combinations(range(n), 2))
    extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    return build_graph(n, edges + extra)


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def brute_force_trees(G):
    """All spanning trees by checking every (n-1)-subset of edges."""
    out = []
    for subset in itertools.combinations(G.edges, G.n - 1):
        H = nx.Graph()
        H.add_nodes_from(range(G.n))
        H.add_edges_from(subset)
        if nx.is_tree(H):
            out.append(tuple(sorted(subset)))
    return out


def brute_force_congestion(G, tree_edges):
    """Per-edge congestion from networkx components of T - e."""
    out = {}
    for e in tree_edges:
        H = nx.Graph()
        H.add_nodes_from(range(G.n))
        H.add_edges_from(f for f in tree_edges if f != e)
        side = nx.node_connected_component(H, e[0])
        out[e] = sum(1 for u, v in G.edges if (u in side) != (v in side))
    return out


_acceptance_lines = []


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    status = "PASS" if call.excinfo is None else "FAIL"
    _acceptance_lines.append(f"AC{marker.args[0]} {status} {item.name} ({call.duration:.2f}s)")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[0][2:])):
            terminalreporter.write_line(line)
