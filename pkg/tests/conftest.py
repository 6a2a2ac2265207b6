"""
Pytest configuration and shared fixtures for the planar toolkit tests.

This module provides named graphs, a brute-force 3-coloring oracle that
enumerates all 3^n assignments, and marker registration.
"""

import os
import sys
from itertools import product
from pathlib import Path
from typing import Optional

import networkx as nx
import pytest

# Add the project root to Python path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


# Brute-force oracle
def brute_force_colorable(graph: nx.Graph, cs=None) -> bool:
    """Try all 3^n colorings; only for tiny graphs."""
    nodes = sorted(graph.nodes)
    fixed = dict(cs.fixed) if cs is not None else {}
    equal = list(cs.equal_pairs) if cs is not None else []
    distinct = list(cs.distinct_pairs) if cs is not None else []
    for colors in product((1, 2, 3), repeat=len(nodes)):
        assignment = dict(zip(nodes, colors))
        if any(assignment[u] == assignment[v] for u, v in graph.edges):
            continue
        if any(assignment[v] != c for v, c in fixed.items()):
            continue
        if any(assignment[u] != assignment[v] for u, v in equal):
            continue
        if any(assignment[u] == assignment[v] for u, v in distinct):
            continue
        return True
    return False


@pytest.fixture
def oracle():
    """Provides the brute-force colorability check."""
    return brute_force_colorable


# Named graph fixtures
@pytest.fixture
def k4():
    from src.graph.plane_graph import embed_graph
    return embed_graph(nx.complete_graph(4))


@pytest.fixture
def c4():
    from src.graph.plane_graph import embed_graph
    return embed_graph(nx.cycle_graph(4))


@pytest.fixture
def c5():
    from src.graph.plane_graph import embed_graph
    return embed_graph(nx.cycle_graph(5))


@pytest.fixture
def cube():
    from src.catalog.families import named_graph
    from src.graph.plane_graph import embed_graph
    return embed_graph(named_graph("Q3"))


@pytest.fixture
def octahedron():
    from src.graph.plane_graph import embed_graph
    return embed_graph(nx.octahedral_graph())


@pytest.fixture
def k4prime():
    from src.catalog.families import make_k4prime
    return make_k4prime()


@pytest.fixture
def moser():
    from src.catalog.families import moser_spindle
    return moser_spindle()


@pytest.fixture
def lemma10_graph():
    from src.catalog.families import make_lemma10_configuration
    return make_lemma10_configuration()


@pytest.fixture
def diamond():
    """K4 minus the edge 0-3: two triangles sharing 1-2."""
    from src.graph.plane_graph import build_embedding
    return build_embedding([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def edge_list_file(tmp_path):
    """Writes an edge list to a temporary file and returns its path."""
    def write(edges, name: str = "graph.txt", isolated: Optional[list] = None) -> Path:
        lines = [str(v) for v in (isolated or [])] + [f"{u} {v}" for u, v in edges]
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n")
        return path
    return write


# Environment setup fixtures
@pytest.fixture(autouse=True)
def reset_environment_vars():
    """Reset environment variables before each test."""
    original_env = os.environ.copy()
    yield
    os.environ.clear()
    os.environ.update(original_env)


# Pytest hooks
def pytest_configure(config):
    """Configure pytest with custom settings."""
    config.addinivalue_line(
        "markers", "unit: Fast tests of a single operation"
    )
    config.addinivalue_line(
        "markers", "integration: End-to-end tests through the command line"
    )
    config.addinivalue_line(
        "markers", "slow: Corpus scans at acceptance scale"
    )
    config.addinivalue_line(
        "markers", "corpus: Tests that enumerate graph corpora"
    )


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers automatically."""
    for item in items:
        if "test_cli" in item.nodeid:
            item.add_marker(pytest.mark.integration)
        if "scan" in item.name.lower() or "enumerat" in item.name.lower():
            item.add_marker(pytest.mark.corpus)
