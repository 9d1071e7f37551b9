"""Sparse certificates and the solver that is exponential only in the clue count.

A board is solvable iff some filling of the cells touching clue vertices
meets every clue and is acyclic; greedy completion handles the rest.  All
work here is over hashed coordinates, so nothing scales with board area.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .board import (BACKSLASH, EMPTY, SLASH, Assignment, Board, Cell, Vertex,
                    diagonal_endpoints, toward)
from .greedy import extend
from .result import SolveResult, Status
from .validity import KeyedDSU


class WrongSupport(ValueError):
    pass


@dataclass(frozen=True)
class ClueNeighborhood:
    cells: tuple[Cell, ...]
    incidence: Mapping[Vertex, tuple[Cell, ...]]

    def __len__(self):
        return len(self.cells)


def _clue_order(b: Board) -> list[Vertex]:
    return sorted(b.clues, key=lambda v: (v[1], v[0]))


def clue_cells(b: Board) -> ClueNeighborhood:
    cells: dict[Cell, None] = {}
    incidence = {}
    for v in _clue_order(b):
        inc = tuple(b.incident_cells(v))
        incidence[v] = inc
        for c in inc:
            cells.setdefault(c)
    return ClueNeighborhood(tuple(cells), incidence)


def _as_mapping(partial) -> dict[Cell, str]:
    if isinstance(partial, Assignment):
        return dict(partial.filled())
    return {c: ch for c, ch in partial.items() if ch != EMPTY}


def certificate_check(b: Board, partial: Assignment | Mapping[Cell, str]) -> bool:
    """Whether a filling of exactly the clue cells meets all clues acyclically.

    ``partial`` may be a dense ``Assignment`` or a sparse ``{cell: glyph}``
    mapping; the latter keeps memory at O(k) for huge boards.
    """
    fill = _as_mapping(partial)
    hood = clue_cells(b)
    if set(fill) != set(hood.cells):
        raise WrongSupport("certificate must fill exactly the clue-adjacent cells")
    for v, cells in hood.incidence.items():
        if sum(1 for c in cells if fill[c] == toward(c, v)) != b.clues[v]:
            return False
    dsu = KeyedDSU()
    for cell in hood.cells:
        e = diagonal_endpoints(cell, fill[cell])
        if not dsu.union(e.u, e.v):
            return False
    return True


def _enumerate(b: Board, hood: ClueNeighborhood, max_nodes: int):
    """Depth-first search over clue-cell fillings in configuration-index order.

    Yields the first accepted filling (dict) or nothing; the Backslash-first
    order means the lowest configuration index (bit i set = Slash at cell i)
    is found first.
    """
    cells = hood.cells
    n = len(cells)
    # clue vertices whose last incident cell sits at position i
    closes: list[list[Vertex]] = [[] for _ in range(n)]
    pos = {c: i for i, c in enumerate(cells)}
    for v, inc in hood.incidence.items():
        closes[max(pos[c] for c in inc)].append(v)
    # per cell: (vertex, glyph toward vertex) for each clue it touches
    touches: list[list[tuple[Vertex, str]]] = [[] for _ in range(n)]
    for v, inc in hood.incidence.items():
        for c in inc:
            touches[pos[c]].append((v, toward(c, v)))
    remaining = {v: len(inc) for v, inc in hood.incidence.items()}
    got = {v: 0 for v in hood.incidence}
    need = dict(b.clues)
    dsu = KeyedDSU()
    fill: dict[Cell, str] = {}
    nodes = 0

    def rec(i):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise _Overflow
        if i == n:
            return True
        cell = cells[i]
        for choice in (BACKSLASH, SLASH):
            e = diagonal_endpoints(cell, choice)
            if dsu.connected(e.u, e.v):
                continue
            ok = True
            for v, t in touches[i]:
                remaining[v] -= 1
                if t == choice:
                    got[v] += 1
                if got[v] > need[v] or got[v] + remaining[v] < need[v]:
                    ok = False
            if ok:
                mark = dsu.dsu.log_length
                dsu.union(e.u, e.v)
                fill[cell] = choice
                if rec(i + 1):
                    return True
                del fill[cell]
                dsu.dsu.undo_to(mark)
            for v, t in touches[i]:
                remaining[v] += 1
                if t == choice:
                    got[v] -= 1
        return False

    found = rec(0)
    return (dict(fill) if found else None), nodes


class _Overflow(Exception):
    pass


def solve_fpt(b: Board, materialize: bool = False, max_nodes: int = 1 << 22) -> SolveResult:
    hood = clue_cells(b)
    try:
        fill, nodes = _enumerate(b, hood, max_nodes)
    except _Overflow:
        return SolveResult(Status.OVERFLOW, stats={"clue_cells": len(hood), "max_nodes": max_nodes})
    stats = {"clue_cells": len(hood), "nodes": nodes}
    if fill is None:
        return SolveResult(Status.UNSOLVABLE, stats=stats)
    stats["certificate"] = {f"{x},{y}": ch for (x, y), ch in sorted(fill.items())}
    witness = None
    if materialize:
        partial = Assignment.empty_for(b)
        for cell, ch in fill.items():
            partial[cell] = ch
        witness = extend(partial)
    return SolveResult(Status.SOLVABLE, witness=witness, stats=stats)
