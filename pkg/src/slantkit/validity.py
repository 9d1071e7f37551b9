"""Clue counting, cycle detection and the full solution verifier."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Hashable, Iterable

from .board import (EMPTY, Assignment, Board, DiagonalEdge, Vertex,
                    diagonal_endpoints, incident_cells, toward)


class RollbackDSU:
    """Union-find with exact undo.

    Union by rank, no path compression, so every union touches a constant
    number of slots and can be reverted from the log.
    """

    def __init__(self, n: int = 0):
        self.parent = list(range(n))
        self.rank = [0] * n
        self._log: list[tuple[int, int, bool]] = []
        self._checkpoints: list[int] = []

    def __len__(self):
        return len(self.parent)

    def add(self) -> int:
        i = len(self.parent)
        self.parent.append(i)
        self.rank.append(0)
        return i

    def find(self, i: int) -> int:
        parent = self.parent
        while parent[i] != i:
            i = parent[i]
        return i

    def connected(self, i: int, j: int) -> bool:
        return self.find(i) == self.find(j)

    def union(self, i: int, j: int) -> bool:
        """Merge the sets of ``i`` and ``j``; False if they were already joined."""
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        if self.rank[ri] < self.rank[rj]:
            ri, rj = rj, ri
        bumped = self.rank[ri] == self.rank[rj]
        self.parent[rj] = ri
        if bumped:
            self.rank[ri] += 1
        self._log.append((ri, rj, bumped))
        return True

    def checkpoint(self) -> int:
        self._checkpoints.append(len(self._log))
        return len(self._checkpoints)

    def rollback(self) -> None:
        """Undo every union since the most recent checkpoint and pop it."""
        self.undo_to(self._checkpoints.pop())

    def undo_to(self, log_length: int) -> None:
        log, parent, rank = self._log, self.parent, self.rank
        while len(log) > log_length:
            ri, rj, bumped = log.pop()
            parent[rj] = rj
            if bumped:
                rank[ri] -= 1

    @property
    def log_length(self) -> int:
        return len(self._log)

    def groups(self) -> list[frozenset[int]]:
        out = defaultdict(set)
        for i in range(len(self.parent)):
            out[self.find(i)].add(i)
        return sorted((frozenset(g) for g in out.values()), key=min)


class KeyedDSU:
    """RollbackDSU over arbitrary hashable keys, allocating ids on demand."""

    def __init__(self):
        self._ids: dict[Hashable, int] = {}
        self.dsu = RollbackDSU()

    def _id(self, key) -> int:
        i = self._ids.get(key)
        if i is None:
            i = self._ids[key] = self.dsu.add()
        return i

    def connected(self, a, b) -> bool:
        if a not in self._ids or b not in self._ids:
            return a == b
        return self.dsu.connected(self._ids[a], self._ids[b])

    def union(self, a, b) -> bool:
        return self.dsu.union(self._id(a), self._id(b))


@dataclass(frozen=True)
class ClueViolation:
    vertex: Vertex
    expected: int
    actual: int

    def __str__(self):
        return f"ClueViolation at {self.vertex}: expected {self.expected}, got {self.actual}"


@dataclass(frozen=True)
class CycleViolation:
    edges: tuple[DiagonalEdge, ...]

    def __str__(self):
        walk = " - ".join(str(v) for v in cycle_vertices(self.edges))
        return f"CycleViolation: {walk}"


Violation = ClueViolation | CycleViolation


def cycle_vertices(edges: Iterable[DiagonalEdge]) -> list[Vertex]:
    """Order the vertices of a cycle given as an edge list, closing the walk."""
    edges = list(edges)
    adj = defaultdict(list)
    for e in edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    start = min(adj)
    walk, prev, cur = [start], None, start
    for _ in edges:
        nxt = next(n for n in adj[cur] if n != prev) if prev is not None else min(adj[cur])
        walk.append(nxt)
        prev, cur = cur, nxt
    return walk


def incident_count(a: Assignment, v: Vertex) -> int:
    return sum(1 for cell in incident_cells(v, a.rows, a.cols)
               if a[cell] != EMPTY and a[cell] == toward(cell, v))


def _vid(v: Vertex, cols: int) -> int:
    return v[1] * (cols + 1) + v[0]


def _path(adj, src: Vertex, dst: Vertex) -> list[Vertex]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for w in adj[u]:
            if w not in prev:
                prev[w] = u
                queue.append(w)
    out = [dst]
    while out[-1] != src:
        out.append(prev[out[-1]])
    return out[::-1]


def check_acyclic(a: Assignment) -> CycleViolation | None:
    """None if the placed diagonals form a forest, else a cycle witness."""
    dsu = RollbackDSU((a.rows + 1) * (a.cols + 1))
    adj = defaultdict(list)
    for e in a.edges():
        if not dsu.union(_vid(e.u, a.cols), _vid(e.v, a.cols)):
            walk = _path(adj, e.u, e.v)
            witness = [_edge(p, q) for p, q in zip(walk, walk[1:])] + [e]
            return CycleViolation(tuple(witness))
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    return None


def _edge(p: Vertex, q: Vertex) -> DiagonalEdge:
    cell = (min(p[0], q[0]), min(p[1], q[1]))
    choice = "\\" if (q[0] - p[0]) == (q[1] - p[1]) else "/"
    return diagonal_endpoints(cell, choice)


def check_solution(b: Board, a: Assignment) -> list[Violation]:
    """All violations of a complete assignment; an empty list means solved."""
    if not a.matches(b):
        raise ValueError(f"assignment is {a.rows}x{a.cols}, board is {b.rows}x{b.cols}")
    if not a.is_complete():
        raise ValueError("assignment is incomplete")
    out: list[Violation] = []
    cyc = check_acyclic(a)
    if cyc is not None:
        out.append(cyc)
    for v, k in sorted(b.clues.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        got = incident_count(a, v)
        if got != k:
            out.append(ClueViolation(v, k, got))
    return out


def is_solution(b: Board, a: Assignment) -> bool:
    return not check_solution(b, a)
