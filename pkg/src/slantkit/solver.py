"""Exact solving for arbitrary boards: local deductions plus backtracking.

Deduction rules (applied to a fixed point after every decision):

* clue saturation: a clue that already has ``k`` incident diagonals forces
  its undecided cells away; one whose placed plus undecided cells equal
  ``k`` forces them toward it (this covers 4-clues on the empty board);
* cycle rule: a diagonal whose endpoints are already connected is
  impossible, so its cell takes the other diagonal.  This subsumes the
  "square next to a 4" rule, since the 4 clue's edges are placed first;
* isolated pair: an edge between two interior 1-clues with no other
  diagonals would seal both off from the boundary, so it is impossible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from .board import BACKSLASH, EMPTY, SLASH, Assignment, Board, Cell, Vertex
from .greedy import extend
from .result import BudgetExceeded, SolveResult, Status
from .validity import RollbackDSU, check_solution

GLYPH = {1: BACKSLASH, 2: SLASH}
CODE = {BACKSLASH: 1, SLASH: 2}


@dataclass(frozen=True)
class Contradiction:
    rule: str
    where: tuple

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Progress:
    forced: tuple[tuple[Cell, str], ...]


class SearchState:
    """Partial assignment with per-vertex tallies and a rollback DSU."""

    def __init__(self, board: Board):
        self.board = board
        R, C = board.rows, board.cols
        self.rows, self.cols = R, C
        self.ncells = R * C
        W = C + 1
        self.nverts = (R + 1) * W
        self.val = [0] * self.ncells
        # ends[i][ch] = vertex ids joined by choice ch in cell i
        self.ends: list[tuple] = []
        self.corners: list[tuple[int, int, int, int]] = []
        for y in range(R):
            for x in range(C):
                a, b_, c, d = y * W + x, y * W + x + 1, (y + 1) * W + x, (y + 1) * W + x + 1
                self.ends.append((None, (a, d), (b_, c)))
                self.corners.append((a, b_, c, d))
        # incident[v] = [(cell, choice toward v)]
        self.incident: list[list[tuple[int, int]]] = [[] for _ in range(self.nverts)]
        for i, (a, b_, c, d) in enumerate(self.corners):
            self.incident[a].append((i, 1))
            self.incident[d].append((i, 1))
            self.incident[b_].append((i, 2))
            self.incident[c].append((i, 2))
        self.clue = [-1] * self.nverts
        for (x, y), k in board.clues.items():
            self.clue[y * W + x] = k
        self.boundary = [x in (0, C) or y in (0, R)
                         for y in range(R + 1) for x in range(W)]
        self.toward = [0] * self.nverts
        self.undecided = [len(inc) for inc in self.incident]
        self.dsu = RollbackDSU(self.nverts)
        self.trail: list[int] = []
        self.contradiction: Contradiction | None = None
        self.propagations = 0
        self.clue_cells = [i for i in range(self.ncells)
                           if any(self.clue[v] >= 0 for v in self.corners[i])]

    # -- mutation ---------------------------------------------------------------

    def mark(self) -> tuple[int, int]:
        return len(self.trail), self.dsu.log_length

    def undo(self, mark: tuple[int, int]) -> None:
        trail_len, log_len = mark
        while len(self.trail) > trail_len:
            i = self.trail.pop()
            ch = self.val[i]
            self.val[i] = 0
            for v in self.corners[i]:
                self.undecided[v] += 1
            for v in self.ends[i][ch]:
                self.toward[v] -= 1
        self.dsu.undo_to(log_len)
        self.contradiction = None

    def assign(self, i: int, ch: int) -> bool:
        self.val[i] = ch
        self.trail.append(i)
        for v in self.corners[i]:
            self.undecided[v] -= 1
        u, w = self.ends[i][ch]
        self.toward[u] += 1
        self.toward[w] += 1
        if not self.dsu.union(u, w):
            self.contradiction = Contradiction("cycle", self.cell_of(i))
            return False
        return True

    def cell_of(self, i: int) -> Cell:
        return i % self.cols, i // self.cols

    def vertex_of(self, v: int) -> Vertex:
        return v % (self.cols + 1), v // (self.cols + 1)

    # -- deduction --------------------------------------------------------------

    def propagate(self, queue=None) -> bool:
        """Apply all rules to a fixed point; False on contradiction."""
        if self.contradiction is not None:
            return False
        clue, toward, undecided, val = self.clue, self.toward, self.undecided, self.val
        pending = list(range(self.nverts)) if queue is None else list(queue)
        scan_cycles = True
        while True:
            while pending:
                v = pending.pop()
                k = clue[v]
                if k < 0:
                    continue
                t, u = toward[v], undecided[v]
                if t > k or t + u < k:
                    self.contradiction = Contradiction("clue", self.vertex_of(v))
                    return False
                if u == 0:
                    continue
                if t == k:
                    for i, ch in self.incident[v]:
                        if val[i] == 0:
                            if not self._force(i, 3 - ch, pending):
                                return False
                    scan_cycles = True
                elif t + u == k:
                    for i, ch in self.incident[v]:
                        if val[i] == 0:
                            if not self._force(i, ch, pending):
                                return False
                    scan_cycles = True
            if not scan_cycles:
                return True
            scan_cycles = False
            find = self.dsu.find
            for i in range(self.ncells):
                if val[i]:
                    continue
                _, (a, d), (b_, c) = self.ends[i]
                bad1 = find(a) == find(d) or self._isolated_pair(a, d)
                bad2 = find(b_) == find(c) or self._isolated_pair(b_, c)
                if bad1 and bad2:
                    self.contradiction = Contradiction("cycle", self.cell_of(i))
                    return False
                if bad1 or bad2:
                    if not self._force(i, 2 if bad1 else 1, pending):
                        return False
                    scan_cycles = True
            if not pending and not scan_cycles:
                return True

    def _isolated_pair(self, a: int, b: int) -> bool:
        clue = self.clue
        return (clue[a] == 1 and clue[b] == 1 and self.toward[a] == 0 and self.toward[b] == 0
                and not self.boundary[a] and not self.boundary[b])

    def _force(self, i: int, ch: int, pending: list) -> bool:
        self.propagations += 1
        ok = self.assign(i, ch)
        pending.extend(self.corners[i])
        return ok

    # -- search helpers -------------------------------------------------------------

    def pick_branch_cell(self, counting: bool) -> int | None:
        """Undecided cell with the most unsettled clue corners.

        None when no clue cell is undecided (or, when counting, no cell at all).
        """
        best, best_score = None, 0
        val, clue, undecided = self.val, self.clue, self.undecided
        for i in self.clue_cells:
            if val[i]:
                continue
            score = sum(1 for v in self.corners[i] if clue[v] >= 0 and undecided[v])
            if score > best_score:
                best, best_score = i, score
        if best is None and counting:
            best = next((i for i in range(self.ncells) if not val[i]), None)
        return best

    def assignment(self) -> Assignment:
        return Assignment(self.rows, self.cols,
                          [GLYPH[c] if c else EMPTY for c in self.val])


def propagate(b: Board, state: SearchState | None = None) -> Progress | Contradiction:
    """Run the deduction rules on ``state`` (a fresh one by default)."""
    state = state or SearchState(b)
    before = len(state.trail)
    if not state.propagate():
        return state.contradiction
    forced = tuple((state.cell_of(i), GLYPH[state.val[i]]) for i in state.trail[before:])
    return Progress(forced)


def _search(state: SearchState, counting: bool, cap: int, max_nodes: int,
            max_seconds: float | None, on_leaf):
    """Depth-first search; ``on_leaf`` returns True to stop.  Leaves state clean."""
    start = time.perf_counter()
    root = state.mark()
    nodes = 0
    stack: list[list] = []
    ok = state.propagate()
    try:
        while True:
            if ok:
                cell = state.pick_branch_cell(counting)
                if cell is None:
                    if on_leaf(state):
                        return nodes, False
                    ok = False
                else:
                    nodes += 1
                    if nodes > max_nodes or (max_seconds is not None and nodes % 256 == 0
                                             and time.perf_counter() - start > max_seconds):
                        return nodes, True
                    stack.append([cell, state.mark(), False])
                    ok = state.assign(cell, 1) and state.propagate(state.corners[cell])
                    continue
            while stack and stack[-1][2]:
                state.undo(stack.pop()[1])
            if not stack:
                return nodes, False
            top = stack[-1]
            state.undo(top[1])
            top[2] = True
            ok = state.assign(top[0], 2) and state.propagate(state.corners[top[0]])
    finally:
        state.undo(root)


def solve_exact(b: Board, max_nodes: int = 10**7, max_seconds: float | None = None,
                state: SearchState | None = None) -> SolveResult:
    state = state or SearchState(b)
    found: list[Assignment] = []
    t0 = time.perf_counter()

    def on_leaf(s):
        found.append(s.assignment())
        return True

    nodes, overflow = _search(state, False, 1, max_nodes, max_seconds, on_leaf)
    stats = {"nodes": nodes, "propagations": state.propagations,
             "seconds": round(time.perf_counter() - t0, 6)}
    if found:
        partial = found[0]
        witness = partial if partial.is_complete() else extend(partial)
        stats["shortcut"] = not partial.is_complete()
        return SolveResult(Status.SOLVABLE, witness=witness, stats=stats)
    if overflow:
        return SolveResult(Status.OVERFLOW, stats=stats)
    return SolveResult(Status.UNSOLVABLE, stats=stats)


def count_solutions(b: Board, cap: int = 10**6, max_nodes: int = 10**7) -> int:
    """Number of solutions, saturating at ``cap``."""
    state = SearchState(b)
    total = 0

    def on_leaf(s):
        nonlocal total
        total += 1
        return total >= cap

    _, overflow = _search(state, True, cap, max_nodes, None, on_leaf)
    if overflow:
        raise BudgetExceeded(f"node budget {max_nodes} exhausted after {total} solutions")
    return total


def brute_force(b: Board) -> list[Assignment]:
    """Every valid solution, by checking all ``2^(R*C)`` assignments."""
    n = b.rows * b.cols
    if n > 20:
        raise ValueError(f"brute force refuses {n} cells (limit 20)")
    out = []
    for combo in itertools.product((BACKSLASH, SLASH), repeat=n):
        a = Assignment(b.rows, b.cols, list(combo))
        if not check_solution(b, a):
            out.append(a)
    return out


def generate(rows: int, cols: int, density: float, seed: int | None = None) -> Board:
    """Random board revealing each vertex degree of a random solution w.p. ``density``."""
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    sol = extend(Assignment(rows, cols), order="random", first="random",
                 seed=rng.randrange(2**32))
    from .validity import incident_count
    clues = {}
    for y in range(rows + 1):
        for x in range(cols + 1):
            if rng.random() < density:
                clues[(x, y)] = incident_count(sol, (x, y))
    return Board(rows, cols, clues)
