import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from slantkit.hamilton import hamiltonian_cycle_through, hamiltonian_path


def brute_path(vertices, edges, ends):
    g = nx.Graph(edges)
    g.add_nodes_from(vertices)
    s, t = ends
    inner = [v for v in vertices if v not in ends]
    for perm in itertools.permutations(inner):
        walk = [s, *perm, t]
        if all(g.has_edge(a, b) for a, b in zip(walk, walk[1:])):
            return True
    return False


def is_path(walk, vertices, edges, ends):
    es = {frozenset(e) for e in edges}
    return (sorted(walk, key=repr) == sorted(vertices, key=repr)
            and {walk[0], walk[-1]} == set(ends)
            and all(frozenset(p) in es for p in zip(walk, walk[1:])))


def test_cycle_on_cube():
    cube = nx.hypercube_graph(3)
    adj = {v: set(cube[v]) for v in cube}
    for u, v in cube.edges:
        cyc = hamiltonian_cycle_through(adj, (u, v))
        assert cyc[:2] == [u, v] and len(set(cyc)) == 8
        assert all(cube.has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))


def test_cycle_none_on_ladder_middle_rung():
    g = nx.ladder_graph(3)
    adj = {v: set(g[v]) for v in g}
    assert hamiltonian_cycle_through(adj, (1, 4)) is None
    assert hamiltonian_cycle_through(adj, (0, 3)) is not None


def test_cycle_rejects_non_edge():
    with pytest.raises(ValueError):
        hamiltonian_cycle_through({0: {1}, 1: {0}, 2: set()}, (0, 2))


@given(st.integers(3, 7), st.data())
def test_path_matches_permutation_search(n, data):
    vertices = list(range(n))
    pairs = list(itertools.combinations(vertices, 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    s, t = data.draw(st.lists(st.sampled_from(vertices), min_size=2, max_size=2, unique=True))
    got = hamiltonian_path(vertices, edges, (s, t))
    assert (got is not None) == brute_path(vertices, edges, (s, t))
    if got is not None:
        assert is_path(got, vertices, edges, (s, t))


def test_path_same_end_is_none():
    assert hamiltonian_path([0, 1], [(0, 1)], (0, 0)) is None
