import pytest
from hypothesis import given
from hypothesis import strategies as st

from slantkit.board import (BACKSLASH, EMPTY, SLASH, Assignment, Board, DiagonalEdge,
                            ParseError, Parity, diagonal_endpoints, even_diagonal,
                            incident_cells, parity_view, parse_assignment, parse_board,
                            random_board, serialize_assignment, serialize_board, toward)

from conftest import assignments, boards, star


def test_parse_single_clue():
    b = parse_board("2 2\n...\n.4.\n...")
    assert (b.rows, b.cols) == (2, 2)
    assert b.clues == {(1, 1): 4}


def test_parse_empty_board():
    b = parse_board("1 1\n..\n..")
    assert b == Board(1, 1)
    assert b.clues == {}


@pytest.mark.parametrize("text, line", [
    ("2 2\n...\n.5.\n...", 3),
    ("2 2\n...\n...", 3),
    ("2 x\n...\n...\n...", 1),
    ("2 2\n....\n...\n...", 2),
    ("", 1),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_board(text)
    assert info.value.line == line


def test_parse_error_column():
    with pytest.raises(ParseError) as info:
        parse_board("2 2\n...\n.5.\n...")
    assert info.value.column == 2


def test_serialize_examples():
    assert serialize_board(Board(1, 1)) == "1 1\n..\n.."
    assert serialize_board(Board(2, 2, {(1, 1): 4})) == "2 2\n...\n.4.\n..."


@given(boards(max_side=6))
def test_board_round_trip(b):
    assert parse_board(serialize_board(b)) == b


def test_board_round_trip_random(rng):
    for _ in range(1000):
        b = random_board(rng.randint(1, 8), rng.randint(1, 8), rng.randint(0, 12), rng)
        assert parse_board(serialize_board(b)) == b


@given(assignments(partial=True))
def test_assignment_round_trip(a):
    assert parse_assignment(serialize_assignment(a), a.rows, a.cols) == a


def test_assignment_parse_rejects_bad_glyph():
    with pytest.raises(ParseError) as info:
        parse_assignment("\\x\n//")
    assert (info.value.line, info.value.column) == (1, 2)


@pytest.mark.parametrize("bad", [
    dict(rows=0, cols=1, clues={}),
    dict(rows=1, cols=1, clues={(2, 0): 1}),
    dict(rows=1, cols=1, clues={(0, 0): 5}),
])
def test_board_invariants(bad):
    with pytest.raises(ValueError):
        Board(**bad)


@pytest.mark.parametrize("cell, glyph, u, v, parity", [
    ((0, 0), BACKSLASH, (0, 0), (1, 1), Parity.EVEN),
    ((0, 0), SLASH, (1, 0), (0, 1), Parity.ODD),
    ((1, 0), SLASH, (2, 0), (1, 1), Parity.EVEN),
])
def test_diagonal_endpoints(cell, glyph, u, v, parity):
    e = diagonal_endpoints(cell, glyph)
    assert {e.u, e.v} == {u, v}
    assert e.parity is parity


def test_diagonal_endpoints_range():
    with pytest.raises(IndexError):
        diagonal_endpoints((2, 0), BACKSLASH, rows=2, cols=2)
    with pytest.raises(ValueError):
        diagonal_endpoints((0, 0), EMPTY)


def test_diagonal_edge_rejects_non_diagonal():
    with pytest.raises(ValueError):
        DiagonalEdge((0, 0), (1, 0), Parity.EVEN)


def test_parity_partition_exhaustive():
    for y in range(10):
        for x in range(10):
            e1 = diagonal_endpoints((x, y), BACKSLASH)
            e2 = diagonal_endpoints((x, y), SLASH)
            assert e1.parity != e2.parity
            assert not {e1.u, e1.v} & {e2.u, e2.v}
            assert diagonal_endpoints((x, y), even_diagonal((x, y))).parity is Parity.EVEN


def test_parity_view_examples():
    view = parity_view(Assignment.from_rows(["\\"]))
    assert view.even_edges == {DiagonalEdge((0, 0), (1, 1), Parity.EVEN)}
    assert not view.odd_edges

    view = parity_view(star())
    assert len(view.even_edges) == 4 and not view.odd_edges
    assert all((1, 1) in e.endpoints for e in view.even_edges)

    view = parity_view(Assignment(3, 3))
    assert not view.even_edges and not view.odd_edges


@given(assignments(max_side=6))
def test_edge_count_matches_cells(a):
    view = parity_view(a)
    assert len(view.even_edges) + len(view.odd_edges) == a.rows * a.cols


@given(st.integers(0, 6), st.integers(0, 6))
def test_toward_touches_vertex(x, y):
    for cell in incident_cells((x, y), 6, 6):
        e = diagonal_endpoints(cell, toward(cell, (x, y)))
        assert (x, y) in e.endpoints


def test_incident_cells_counts():
    assert len(incident_cells((1, 1), 2, 2)) == 4
    assert incident_cells((0, 0), 100, 100) == [(0, 0)]
    assert len(incident_cells((3, 0), 3, 3)) == 1
    assert len(incident_cells((1, 0), 3, 3)) == 2
