"""Boards, assignments and the coordinate conventions shared by every solver.

Coordinates: ``(x, y)`` with ``x`` growing rightward and ``y`` downward.  A
board with ``rows`` x ``cols`` cells has vertices ``0 <= x <= cols`` and
``0 <= y <= rows``; cell ``(x, y)`` has its top-left corner at vertex ``(x, y)``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterator, Mapping

BACKSLASH = "\\"
SLASH = "/"
EMPTY = "."

Vertex = tuple[int, int]
Cell = tuple[int, int]


class ParseError(ValueError):
    """Malformed board or assignment text."""

    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1


@dataclass(frozen=True)
class Board:
    """Grid dimensions (in cells) plus a sparse map of vertex clues."""

    rows: int
    cols: int
    clues: Mapping[Vertex, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"board must have at least one cell, got {self.rows}x{self.cols}")
        clues = dict(self.clues)
        for (x, y), k in clues.items():
            if not (0 <= x <= self.cols and 0 <= y <= self.rows):
                raise ValueError(f"clue vertex {(x, y)} outside {self.rows}x{self.cols} board")
            if k not in (0, 1, 2, 3, 4):
                raise ValueError(f"clue value {k!r} at {(x, y)} not in 0..4")
        object.__setattr__(self, "clues", clues)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.clues.items())))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def cells(self) -> Iterator[Cell]:
        for y in range(self.rows):
            for x in range(self.cols):
                yield x, y

    def vertices(self) -> Iterator[Vertex]:
        for y in range(self.rows + 1):
            for x in range(self.cols + 1):
                yield x, y

    def incident_cells(self, v: Vertex) -> list[Cell]:
        return incident_cells(v, self.rows, self.cols)

    def with_clues(self, clues: Mapping[Vertex, int]) -> "Board":
        return Board(self.rows, self.cols, clues)


def incident_cells(v: Vertex, rows: int, cols: int) -> list[Cell]:
    """Cells sharing a corner with vertex ``v``, in row-major order."""
    x, y = v
    out = []
    for cy in (y - 1, y):
        for cx in (x - 1, x):
            if 0 <= cx < cols and 0 <= cy < rows:
                out.append((cx, cy))
    return out


def toward(cell: Cell, v: Vertex) -> str:
    """The diagonal of ``cell`` that has ``v`` as an endpoint."""
    cx, cy = cell
    return BACKSLASH if (v[0] - cx) == (v[1] - cy) else SLASH


def other(choice: str) -> str:
    return SLASH if choice == BACKSLASH else BACKSLASH


def even_diagonal(cell: Cell) -> str:
    """Glyph of the diagonal whose endpoints have even coordinate sums."""
    return BACKSLASH if (cell[0] + cell[1]) % 2 == 0 else SLASH


@dataclass(frozen=True)
class DiagonalEdge:
    u: Vertex
    v: Vertex
    parity: Parity

    def __post_init__(self):
        (ux, uy), (vx, vy) = self.u, self.v
        if abs(ux - vx) != 1 or abs(uy - vy) != 1:
            raise ValueError(f"{self.u}-{self.v} is not a diagonal")
        if (ux + uy) % 2 != (vx + vy) % 2:
            raise ValueError(f"{self.u}-{self.v} mixes parities")

    @property
    def endpoints(self) -> tuple[Vertex, Vertex]:
        return self.u, self.v


def diagonal_endpoints(cell: Cell, choice: str, rows: int | None = None,
                       cols: int | None = None) -> DiagonalEdge:
    x, y = cell
    if x < 0 or y < 0 or (cols is not None and x >= cols) or (rows is not None and y >= rows):
        raise IndexError(f"cell {cell} out of range")
    if choice == BACKSLASH:
        return DiagonalEdge((x, y), (x + 1, y + 1), Parity((x + y) % 2))
    if choice == SLASH:
        return DiagonalEdge((x + 1, y), (x, y + 1), Parity((x + y + 1) % 2))
    raise ValueError(f"not a diagonal: {choice!r}")


class Assignment:
    """Per-cell diagonal choices; ``EMPTY`` marks an unfilled cell."""

    __slots__ = ("rows", "cols", "cells")

    def __init__(self, rows: int, cols: int, cells: list[str] | None = None):
        self.rows = rows
        self.cols = cols
        if cells is None:
            cells = [EMPTY] * (rows * cols)
        if len(cells) != rows * cols:
            raise ValueError("cell list does not match dimensions")
        for ch in cells:
            if ch not in (BACKSLASH, SLASH, EMPTY):
                raise ValueError(f"invalid cell state {ch!r}")
        self.cells = list(cells)

    @classmethod
    def empty_for(cls, board: Board) -> "Assignment":
        return cls(board.rows, board.cols)

    @classmethod
    def from_rows(cls, rows: list[str]) -> "Assignment":
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("rows must be non-empty and of equal length")
        return cls(len(rows), len(rows[0]), [ch for r in rows for ch in r])

    def __getitem__(self, cell: Cell) -> str:
        x, y = cell
        return self.cells[y * self.cols + x]

    def __setitem__(self, cell: Cell, choice: str):
        x, y = cell
        if choice not in (BACKSLASH, SLASH, EMPTY):
            raise ValueError(f"invalid cell state {choice!r}")
        self.cells[y * self.cols + x] = choice

    def __eq__(self, other_):
        if not isinstance(other_, Assignment):
            return NotImplemented
        return (self.rows, self.cols, self.cells) == (other_.rows, other_.cols, other_.cells)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.cells)))

    def __repr__(self):
        return f"Assignment.from_rows({self.to_rows()!r})"

    def copy(self) -> "Assignment":
        return Assignment(self.rows, self.cols, self.cells)

    def to_rows(self) -> list[str]:
        c = self.cols
        return ["".join(self.cells[y * c:(y + 1) * c]) for y in range(self.rows)]

    def is_complete(self) -> bool:
        return EMPTY not in self.cells

    def filled(self) -> Iterator[tuple[Cell, str]]:
        c = self.cols
        for i, ch in enumerate(self.cells):
            if ch != EMPTY:
                yield (i % c, i // c), ch

    def edges(self) -> Iterator[DiagonalEdge]:
        for cell, ch in self.filled():
            yield diagonal_endpoints(cell, ch)

    def matches(self, board: Board) -> bool:
        return (self.rows, self.cols) == (board.rows, board.cols)


@dataclass(frozen=True)
class ParityView:
    even_edges: frozenset[DiagonalEdge]
    odd_edges: frozenset[DiagonalEdge]


def parity_view(a: Assignment) -> ParityView:
    even, odd = set(), set()
    for e in a.edges():
        (even if e.parity is Parity.EVEN else odd).add(e)
    return ParityView(frozenset(even), frozenset(odd))


# -- text formats ------------------------------------------------------------

_CLUE_CHARS = {".": None, "0": 0, "1": 1, "2": 2, "3": 3, "4": 4}


def _lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def parse_board(text: str) -> Board:
    lines = _lines(text)
    if not lines:
        raise ParseError("missing header", 1)
    parts = lines[0].split(" ")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"header must be 'R C', got {lines[0]!r}", 1)
    rows, cols = int(parts[0]), int(parts[1])
    if rows < 1 or cols < 1:
        raise ParseError("dimensions must be positive", 1)
    if len(lines) != rows + 2:
        raise ParseError(f"expected {rows + 1} vertex lines, got {len(lines) - 1}", len(lines))
    clues = {}
    for y, line in enumerate(lines[1:]):
        lineno = y + 2
        if len(line) != cols + 1:
            raise ParseError(f"expected {cols + 1} characters, got {len(line)}", lineno)
        for x, ch in enumerate(line):
            if ch not in _CLUE_CHARS:
                raise ParseError(f"invalid character {ch!r}", lineno, x + 1)
            if _CLUE_CHARS[ch] is not None:
                clues[(x, y)] = _CLUE_CHARS[ch]
    return Board(rows, cols, clues)


def serialize_board(b: Board) -> str:
    out = [f"{b.rows} {b.cols}"]
    for y in range(b.rows + 1):
        out.append("".join(str(b.clues[(x, y)]) if (x, y) in b.clues else "."
                           for x in range(b.cols + 1)))
    return "\n".join(out)


def parse_assignment(text: str, rows: int | None = None, cols: int | None = None) -> Assignment:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty assignment", 1)
    if rows is not None and len(lines) != rows:
        raise ParseError(f"expected {rows} lines, got {len(lines)}", len(lines))
    width = cols if cols is not None else len(lines[0])
    for y, line in enumerate(lines):
        if len(line) != width:
            raise ParseError(f"expected {width} characters, got {len(line)}", y + 1)
        for x, ch in enumerate(line):
            if ch not in (BACKSLASH, SLASH, EMPTY):
                raise ParseError(f"invalid character {ch!r}", y + 1, x + 1)
    return Assignment.from_rows(lines)


def serialize_assignment(a: Assignment) -> str:
    return "\n".join(a.to_rows())


def random_board(rows: int, cols: int, n_clues: int, rng: random.Random) -> Board:
    verts = [(x, y) for y in range(rows + 1) for x in range(cols + 1)]
    picked = rng.sample(verts, min(n_clues, len(verts)))
    return Board(rows, cols, {v: rng.randint(0, 4) for v in picked})
