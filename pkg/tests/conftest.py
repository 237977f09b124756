"""Shared fixtures: small named graphs and the fixed test corpus."""

import itertools

import pytest

from halllab.generators import gnp, kneser, mycielski
from halllab.graph import build_graph
from halllab.rng import Seed


def path_graph(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return build_graph(n, list(itertools.combinations(range(n), 2)))


def star_graph(n):
    """Star with n leaves (n+1 vertices, hub 0)."""
    return build_graph(n + 1, [(0, i) for i in range(1, n + 1)])


def edgeless_graph(n):
    return build_graph(n, [])


def complete_bipartite(p, q):
    return build_graph(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def petersen():
    return kneser(5, 2)


@pytest.fixture(scope="session")
def corpus8():
    """Exactly 30 named graphs on at most 8 vertices, fixed for good."""
    named = [
        ("K_1", complete_graph(1)),
        ("K_2", complete_graph(2)),
        ("K_3", complete_graph(3)),
        ("K_4", complete_graph(4)),
        ("K_5", complete_graph(5)),
        ("P_2", path_graph(2)),
        ("P_3", path_graph(3)),
        ("P_4", path_graph(4)),
        ("P_5", path_graph(5)),
        ("P_6", path_graph(6)),
        ("C_4", cycle_graph(4)),
        ("C_5", cycle_graph(5)),
        ("C_6", cycle_graph(6)),
        ("C_7", cycle_graph(7)),
        ("C_8", cycle_graph(8)),
        ("star_3", star_graph(3)),
        ("star_5", star_graph(5)),
        ("K_2,3", complete_bipartite(2, 3)),
        ("K_3,3", complete_bipartite(3, 3)),
        ("K_3,4", complete_bipartite(3, 4)),
        ("empty_4", edgeless_graph(4)),
        ("empty_7", edgeless_graph(7)),
        ("kneser_4_2", kneser(4, 2)),
        ("mycielski_K_2", mycielski(complete_graph(2))),
        ("mycielski_P_3", mycielski(path_graph(3))),
    ]
    for i in range(5):
        named.append((f"gnp_8_{i}", gnp(8, "1/2", Seed(900 + i))))
    assert len(named) == 30
    assert all(g.n <= 8 for _, g in named)
    return named
