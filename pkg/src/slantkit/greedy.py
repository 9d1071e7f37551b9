"""Greedy acyclic completion and the extremal-clue decision procedure.

Any acyclic partial assignment on a clue-free board extends to a full
solution: fill cells in any order, and whenever a diagonal would close a
cycle take the other one.  The two diagonals of a cell join vertices of
opposite parity lying on opposite sides of any cycle through the first, so
they cannot both close a cycle.
"""

from __future__ import annotations

import random
from typing import Iterable

from .board import (BACKSLASH, EMPTY, SLASH, Assignment, Board, Cell,
                    diagonal_endpoints, incident_cells, other, toward)
from .result import SolveResult, Status
from .validity import RollbackDSU, check_acyclic


class PreconditionCyclic(ValueError):
    pass


class FlipSafetyError(AssertionError):
    """Both diagonals of a cell would close a cycle (must never happen)."""


class NonExtremalClue(ValueError):
    pass


class ClueConflict(ValueError):
    def __init__(self, message: str, cell: Cell | None = None):
        super().__init__(message)
        self.cell = cell


def _cell_order(a: Assignment, order: str | Iterable[Cell], rng: random.Random) -> list[Cell]:
    if order == "row":
        return [(x, y) for y in range(a.rows) for x in range(a.cols)]
    if order == "random":
        cells = [(x, y) for y in range(a.rows) for x in range(a.cols)]
        rng.shuffle(cells)
        return cells
    return list(order)


def extend(a: Assignment, order: str | Iterable[Cell] = "row", first: str = BACKSLASH,
           seed: int | None = None, stats: dict | None = None) -> Assignment:
    """Complete an acyclic partial assignment without creating a cycle.

    ``order`` is ``"row"``, ``"random"`` or an explicit cell sequence (cells
    not listed are filled afterwards in row-major order).  ``first`` is the
    diagonal tried first: ``BACKSLASH``, ``SLASH`` or ``"random"``.
    """
    if check_acyclic(a) is not None:
        raise PreconditionCyclic("partial assignment already contains a cycle")
    rng = random.Random(seed)
    out = a.copy()
    cols = a.cols
    dsu = RollbackDSU((a.rows + 1) * (cols + 1))

    def vid(v):
        return v[1] * (cols + 1) + v[0]

    for e in out.edges():
        dsu.union(vid(e.u), vid(e.v))

    flips = 0
    cells = _cell_order(a, order, rng)
    if order not in ("row", "random"):
        cells += [(x, y) for y in range(a.rows) for x in range(a.cols)]
    for cell in cells:
        if out[cell] != EMPTY:
            continue
        choice = first if first != "random" else rng.choice((BACKSLASH, SLASH))
        e = diagonal_endpoints(cell, choice)
        if dsu.connected(vid(e.u), vid(e.v)):
            flips += 1
            choice = other(choice)
            e = diagonal_endpoints(cell, choice)
            if dsu.connected(vid(e.u), vid(e.v)):
                raise FlipSafetyError(f"both diagonals of cell {cell} close a cycle")
        dsu.union(vid(e.u), vid(e.v))
        out[cell] = choice
    if stats is not None:
        stats["flips"] = stats.get("flips", 0) + flips
    return out


def is_extremal(board: Board, v, k: int) -> bool:
    return k in (0, 4) or k == len(board.incident_cells(v))


def forced_from_extremal_clues(b: Board) -> Assignment:
    """Partial assignment forced by 0/4 clues, boundary 2s and corner 1s.

    Raises ``ClueConflict`` when two clues disagree on a cell or a clue asks
    for more diagonals than the vertex has cells.
    """
    out = Assignment.empty_for(b)
    for v, k in sorted(b.clues.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if not is_extremal(b, v, k):
            raise NonExtremalClue(f"clue {k} at {v} is not extremal")
    for v, k in sorted(b.clues.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        cells = b.incident_cells(v)
        if k > len(cells):
            raise ClueConflict(f"clue {k} at {v} exceeds its {len(cells)} cells")
        for cell in cells:
            want = toward(cell, v) if k > 0 else other(toward(cell, v))
            if out[cell] not in (EMPTY, want):
                raise ClueConflict(f"clues disagree on cell {cell}", cell)
            out[cell] = want
    return out


def solve_zero_four(b: Board, seed: int | None = None) -> SolveResult:
    try:
        forced = forced_from_extremal_clues(b)
    except ClueConflict as exc:
        return SolveResult(Status.UNSOLVABLE, stats={"reason": str(exc)})
    cyc = check_acyclic(forced)
    if cyc is not None:
        return SolveResult(Status.UNSOLVABLE, stats={"reason": str(cyc)})
    return SolveResult(Status.SOLVABLE, witness=extend(forced, seed=seed))


def clue_free_partial(a: Assignment, b: Board) -> bool:
    """True when every clue vertex of ``b`` has all its incident cells filled."""
    return all(a[c] != EMPTY for v in b.clues for c in incident_cells(v, b.rows, b.cols))
