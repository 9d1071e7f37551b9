import xml.etree.ElementTree as ET

import pytest
from hypothesis import given

from slantkit.board import Assignment, Board
from slantkit.render import EVEN_COLOUR, render, render_ascii

from conftest import boards, star

SVG = "{http://www.w3.org/2000/svg}"


def test_ascii_single_slash():
    out = render(Board(1, 1), Assignment.from_rows(["/"]))
    assert out.count("/") == 1
    assert out == "+ +\n /\n+ +\n"


def test_ascii_shows_clues():
    out = render_ascii(Board(2, 2, {(1, 1): 4}), star())
    lines = out.splitlines()
    assert lines[2] == "+ 4 +"
    assert lines[1] == " \\ /"


@given(boards(max_side=5))
def test_svg_well_formed(b):
    ET.fromstring(render(b, format="svg"))


def test_svg_star_meets_at_centre():
    root = ET.fromstring(render(Board(2, 2, {(1, 1): 4}), star(), "svg"))
    board = next(g for g in root.iter(SVG + "g") if g.get("id") == "board")
    diagonals = [ln for ln in board.iter(SVG + "line") if ln.get("stroke") == EVEN_COLOUR]
    assert len(diagonals) == 4
    unit = 32
    centre = (str(unit), str(unit))
    for ln in diagonals:
        ends = {(ln.get("x1"), ln.get("y1")), (ln.get("x2"), ln.get("y2"))}
        assert centre in ends


def test_render_checks_shape_and_format():
    with pytest.raises(ValueError):
        render(Board(2, 2), Assignment(1, 1))
    with pytest.raises(ValueError):
        render(Board(1, 1), format="png")
