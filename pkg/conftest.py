"""Shared builders and fixtures for the test suites."""

from itertools import product

import networkx as nx
import numpy as np
import pytest

from config import OracleBudget
from graph_core import BipartiteGraph, Hypergraph, Multigraph
from instance_generator import make_rng


def complete_bipartite(s_count, t_count):
    return BipartiteGraph(s_count, t_count, tuple(product(range(s_count), range(t_count))))


def multigraph(n, *edges):
    return Multigraph(n, tuple(edges))


def cycle(n):
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def petersen():
    g = nx.petersen_graph()
    return Multigraph(g.number_of_nodes(), tuple(g.edges()))


def hypergraph(n, *hyperedges):
    return Hypergraph(n, tuple(frozenset(e) for e in hyperedges))


def random_multigraph(rng: np.random.Generator, max_nodes: int, p: float = 0.4) -> Multigraph:
    """Random multigraph; about one edge in five is doubled."""
    n = int(rng.integers(1, max_nodes + 1))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
                if rng.random() < 0.2:
                    edges.append((u, v))
    return Multigraph(n, tuple(edges))


def random_bipartite(rng: np.random.Generator, max_side: int, p: float = 0.4) -> BipartiteGraph:
    s_count = int(rng.integers(1, max_side + 1))
    t_count = int(rng.integers(1, max_side + 1))
    edges = [(s, t) for s in range(s_count) for t in range(t_count) if rng.random() < p]
    return BipartiteGraph(s_count, t_count, tuple(edges))


@pytest.fixture
def rng():
    return make_rng(20240611)


@pytest.fixture
def k34():
    return complete_bipartite(3, 4)


@pytest.fixture
def roomy_budget():
    return OracleBudget(max_edges=64, max_nodes=16, time_limit=600)
