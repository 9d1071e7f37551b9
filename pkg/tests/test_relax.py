import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slantkit.board import Assignment, Board
from slantkit.relax import (ClassViolation, build_five_matroid_model, build_ilp_model,
                            dump_models, reconstruct, solve_single_class_with_cycle,
                            solve_two_class_vertex_only, vertex_class, vertex_constraints_met)
from slantkit.result import Status
from slantkit.solver import brute_force
from slantkit.validity import check_solution

from conftest import star


def vertex_only_oracle(b):
    """Any complete assignment meeting every clue, cycles ignored."""
    for combo in itertools.product("\\/", repeat=b.rows * b.cols):
        if vertex_constraints_met(b, Assignment(b.rows, b.cols, list(combo))):
            return True
    return False


def test_ilp_examples():
    m = build_ilp_model(Board(2, 2, {(1, 1): 4}))
    assert m.equalities == [(((0, 0), (1, 0), (0, 1), (1, 1)), 4)]
    # an odd vertex with d incident cells asks for d - k even diagonals
    m = build_ilp_model(Board(2, 2, {(1, 0): 1}))
    assert m.equalities == [(((0, 0), (1, 0)), 1)]
    m = build_ilp_model(Board(2, 2))
    assert m.equalities == [] and m.target_weight == 0
    assert m.threshold == m.tree_edge_count


def test_reconstruct_even_glyphs():
    assert reconstruct(Board(2, 2), range(4)) == star()


def test_single_class_examples():
    for b in (Board(2, 2), Board(2, 2, {(1, 1): 4})):
        r = solve_single_class_with_cycle(b)
        assert r.status is Status.SOLVABLE
        assert check_solution(b, r.witness) == []
    assert solve_single_class_with_cycle(Board(2, 2, {(1, 1): 4})).witness == star()
    assert solve_single_class_with_cycle(Board(2, 2, {(1, 1): 0})).status is Status.UNSOLVABLE


def test_single_class_rejects_mixed():
    with pytest.raises(ClassViolation):
        solve_single_class_with_cycle(Board(3, 3, {(1, 1): 1, (1, 2): 1}))


@st.composite
def single_class_boards(draw):
    rows, cols = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    cls = draw(st.tuples(st.integers(0, 1), st.integers(0, 1)))
    verts = [(x, y) for y in range(rows + 1) for x in range(cols + 1) if vertex_class((x, y)) == cls]
    picked = draw(st.lists(st.sampled_from(verts), unique=True, max_size=4)) if verts else []
    return Board(rows, cols, {v: draw(st.integers(0, 4)) for v in picked})


@given(single_class_boards())
def test_single_class_matches_brute_force(b):
    r = solve_single_class_with_cycle(b)
    assert r.solvable == bool(brute_force(b))
    if r.solvable:
        assert check_solution(b, r.witness) == []


def test_two_class_examples():
    assert solve_two_class_vertex_only(Board(3, 3, {(1, 1): 4, (2, 2): 0})).status is Status.UNSOLVABLE
    b = Board(3, 3, {(1, 1): 4, (2, 2): 2})
    r = solve_two_class_vertex_only(b)
    assert r.status is Status.SOLVABLE and vertex_constraints_met(b, r.witness)
    b = Board(2, 2, {(1, 1): 0})
    r = solve_two_class_vertex_only(b)
    assert r.status is Status.SOLVABLE and vertex_constraints_met(b, r.witness)


def test_two_class_rejects_three_classes():
    with pytest.raises(ClassViolation):
        solve_two_class_vertex_only(Board(3, 3, {(0, 0): 1, (1, 1): 1, (0, 1): 1}))


@st.composite
def two_class_boards(draw):
    rows, cols = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    allowed = draw(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)),
                            min_size=1, max_size=2, unique=True))
    verts = [(x, y) for y in range(rows + 1) for x in range(cols + 1) if vertex_class((x, y)) in allowed]
    picked = draw(st.lists(st.sampled_from(verts), unique=True, max_size=5)) if verts else []
    return Board(rows, cols, {v: draw(st.integers(0, 4)) for v in picked})


@given(two_class_boards())
def test_two_class_matches_vertex_oracle(b):
    r = solve_two_class_vertex_only(b)
    assert r.solvable == vertex_only_oracle(b)
    if r.solvable:
        assert vertex_constraints_met(b, r.witness)


def test_five_matroid_examples():
    m = build_five_matroid_model(Board(2, 2, {(1, 1): 4}))
    assert m.partitions["B"].blocks == {(1, 1): [0, 1, 2, 3]}
    assert m.partitions["B"].caps == {(1, 1): 4}
    assert all(not m.partitions[k].caps for k in "ACD")
    m = build_five_matroid_model(Board(2, 2))
    assert m.target_weight == 0 and m.threshold == m.vertex_count - 1


def five_matroid_agrees(b):
    m = build_five_matroid_model(b)
    n = b.rows * b.cols
    for r in range(n + 1):
        for cells in itertools.combinations(range(n), r):
            ok = not check_solution(b, reconstruct(b, cells))
            if m.accepts(cells) != ok:
                return False
    return True


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_five_matroid_characterization(rows, cols, data):
    verts = [(x, y) for y in range(rows + 1) for x in range(cols + 1)]
    picked = data.draw(st.lists(st.sampled_from(verts), unique=True, max_size=3))
    b = Board(rows, cols, {v: data.draw(st.integers(0, 4)) for v in picked})
    assert five_matroid_agrees(b)


def test_dump_models_is_json():
    out = json.loads(dump_models(Board(2, 2, {(1, 1): 4})))
    assert set(out) == {"ilp", "five_matroid"}
    assert out["five_matroid"]["N"] == 4
