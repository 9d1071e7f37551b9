import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from slantkit.board import Assignment, Board
from slantkit.validity import (ClueViolation, CycleViolation, KeyedDSU, RollbackDSU,
                               check_acyclic, check_solution, cycle_vertices,
                               incident_count, is_solution)

from conftest import assignments, boards, ring, star


def has_cycle_oracle(a):
    g = nx.Graph()
    for e in a.edges():
        if g.has_edge(e.u, e.v):
            return True
        g.add_edge(e.u, e.v)
    return bool(nx.cycle_basis(g))


def test_incident_count_examples():
    assert incident_count(star(), (1, 1)) == 4
    assert incident_count(star(), (1, 0)) == 0
    assert incident_count(Assignment(2, 2), (1, 1)) == 0


def test_ring_cycle_reported():
    cyc = check_acyclic(ring())
    assert isinstance(cyc, CycleViolation)
    assert len(cyc.edges) == 4
    walk = cycle_vertices(cyc.edges)
    assert walk[0] == walk[-1]
    assert set(walk) == {(1, 0), (0, 1), (1, 2), (2, 1)}
    assert "cycle" in str(cyc).lower()


def test_acyclic_examples():
    assert check_acyclic(star()) is None
    assert check_acyclic(Assignment(3, 3)) is None


def test_check_solution_examples():
    assert check_solution(Board(2, 2, {(1, 1): 4}), star()) == []
    out = check_solution(Board(2, 2, {(1, 1): 0}), ring())
    assert any(isinstance(v, CycleViolation) for v in out)
    for glyph in ("\\", "/"):
        out = check_solution(Board(1, 1, {(0, 0): 2}), Assignment.from_rows([glyph]))
        assert any(isinstance(v, ClueViolation) for v in out)


def test_check_solution_rejects_mismatch():
    with pytest.raises(ValueError):
        check_solution(Board(2, 2), Assignment(1, 1, ["\\"]))
    with pytest.raises(ValueError):
        check_solution(Board(1, 1), Assignment(1, 1))


@given(assignments(max_side=5, partial=True))
def test_acyclic_matches_graph_oracle(a):
    cyc = check_acyclic(a)
    assert (cyc is not None) == has_cycle_oracle(a)
    if cyc is not None:
        # the reported edges really form a closed walk of placed diagonals
        placed = set(a.edges())
        assert set(cyc.edges) <= placed
        walk = cycle_vertices(cyc.edges)
        assert walk[0] == walk[-1]
        assert len(set(walk)) == len(cyc.edges)


@given(boards(max_side=3), st.data())
def test_check_solution_matches_definition(b, data):
    a = data.draw(assignments(rows=b.rows, cols=b.cols))
    degree_ok = all(incident_count(a, v) == k for v, k in b.clues.items())
    assert is_solution(b, a) == (degree_ok and not has_cycle_oracle(a))


def test_rollback_dsu_restores_partition():
    d = RollbackDSU(6)
    d.union(0, 1)
    mark = d.checkpoint()
    d.union(1, 2)
    d.union(3, 4)
    assert d.connected(0, 2)
    d.rollback()
    assert d.log_length == mark
    assert d.connected(0, 1) and not d.connected(0, 2) and not d.connected(3, 4)


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=30),
       st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=30))
def test_rollback_dsu_against_recompute(first, second):
    d = RollbackDSU(10)
    for i, j in first:
        d.union(i, j)
    before = sorted(map(sorted, d.groups()))
    mark = d.log_length
    for i, j in second:
        d.union(i, j)
    g = nx.Graph()
    g.add_nodes_from(range(10))
    g.add_edges_from(first + second)
    for i in range(10):
        for j in range(10):
            assert d.connected(i, j) == nx.has_path(g, i, j)
    d.undo_to(mark)
    assert sorted(map(sorted, d.groups())) == before


def test_keyed_dsu():
    d = KeyedDSU()
    assert d.union((0, 0), (1, 1))
    assert d.union((1, 1), (2, 0))
    assert not d.union((0, 0), (2, 0))
    assert d.connected((2, 0), (0, 0))
    assert not d.connected((0, 0), (5, 5))
