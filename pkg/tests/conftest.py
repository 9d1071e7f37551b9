import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from slantkit.board import BACKSLASH, EMPTY, SLASH, Assignment, Board

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def boards(draw, max_side=4, max_clues=None):
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    verts = [(x, y) for y in range(rows + 1) for x in range(cols + 1)]
    limit = len(verts) if max_clues is None else max_clues
    picked = draw(st.lists(st.sampled_from(verts), unique=True, max_size=limit))
    clues = {v: draw(st.integers(0, 4)) for v in picked}
    return Board(rows, cols, clues)


@st.composite
def assignments(draw, rows=None, cols=None, max_side=5, partial=False):
    rows = rows or draw(st.integers(1, max_side))
    cols = cols or draw(st.integers(1, max_side))
    glyphs = (BACKSLASH, SLASH, EMPTY) if partial else (BACKSLASH, SLASH)
    cells = draw(st.lists(st.sampled_from(glyphs), min_size=rows * cols, max_size=rows * cols))
    return Assignment(rows, cols, cells)


@pytest.fixture
def rng():
    return random.Random(1234)


def star():
    """The 2x2 assignment whose four diagonals meet at the centre."""
    return Assignment.from_rows(["\\/", "/\\"])


def ring():
    """The 2x2 assignment forming the odd 4-cycle around the centre."""
    return Assignment.from_rows(["/\\", "\\/"])


# -- acceptance reporting ---------------------------------------------------------
#
# Acceptance tests record one line per criterion; the lines are printed after
# the run so they show up in the terminal summary even with output captured.

ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
