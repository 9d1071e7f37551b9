"""Matroid oracles and weighted two-matroid intersection.

Ground sets are ``range(n)``.  The intersection routine follows the classic
augmenting-path scheme on the exchange graph: each step adds one element to
the current common independent set along a shortest path, lengths being
negated weights for entering elements and weights for leaving ones, with
hop count breaking ties.  After step ``k`` the set is a maximum-weight common
independent set of size ``k``.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Protocol, Sequence

from .validity import RollbackDSU


class Matroid(Protocol):
    size: int

    def is_independent(self, s: Iterable[int]) -> bool: ...


class PartitionMatroid:
    """Independent iff at most ``caps[block]`` elements of each block.

    Elements missing from ``block_of`` are unconstrained.
    """

    def __init__(self, size: int, block_of: dict[int, Hashable], caps: dict[Hashable, int]):
        self.size = size
        self.block_of = dict(block_of)
        self.caps = dict(caps)

    @property
    def blocks(self) -> dict[Hashable, list[int]]:
        out: dict[Hashable, list[int]] = {b: [] for b in self.caps}
        for e, b in sorted(self.block_of.items()):
            out.setdefault(b, []).append(e)
        return out

    def is_independent(self, s: Iterable[int]) -> bool:
        used: dict[Hashable, int] = {}
        for e in s:
            b = self.block_of.get(e)
            if b is None:
                continue
            used[b] = used.get(b, 0) + 1
            if used[b] > self.caps[b]:
                return False
        return True


class GraphicMatroid:
    """Independent iff the chosen edges form a forest of the host graph."""

    def __init__(self, n_vertices: int, edges: Sequence[tuple[int, int]]):
        self.size = len(edges)
        self.n_vertices = n_vertices
        self.edges = list(edges)

    def is_independent(self, s: Iterable[int]) -> bool:
        dsu = RollbackDSU(self.n_vertices)
        for e in s:
            u, v = self.edges[e]
            if not dsu.union(u, v):
                return False
        return True

    def rank(self, s: Iterable[int]) -> int:
        dsu = RollbackDSU(self.n_vertices)
        return sum(1 for e in s if dsu.union(*self.edges[e]))


class FreeMatroid:
    def __init__(self, size: int):
        self.size = size

    def is_independent(self, s: Iterable[int]) -> bool:
        return True


def matroid_intersection_max_weight(m1: Matroid, m2: Matroid,
                                    weights: Sequence[int]) -> tuple[frozenset[int], int]:
    """Maximum-weight common independent set of two matroids.

    Ties go to larger sets, then to the lexicographically smallest sorted
    index list.  Weights must be non-negative integers.
    """
    n = len(weights)
    if m1.size != n or m2.size != n:
        raise ValueError("matroids and weights must share one ground set")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be non-negative")
    # fold the tie-break rules into one exact integer objective
    lex = 1 << n
    card = lex
    scale = (n + 1) * card + lex
    key = [weights[i] * scale + card + (1 << (n - 1 - i)) for i in range(n)]

    current: set[int] = set()
    best: frozenset[int] = frozenset()
    best_key = 0
    while True:
        path = _shortest_augmenting_path(m1, m2, key, current)
        if path is None:
            break
        for e in path:
            current ^= {e}
        total = sum(key[e] for e in current)
        if total > best_key:
            best, best_key = frozenset(current), total
    return best, sum(weights[e] for e in best)


def _shortest_augmenting_path(m1: Matroid, m2: Matroid, key: Sequence[int], current: set[int]):
    n = len(key)
    inside = sorted(current)
    outside = [y for y in range(n) if y not in current]
    sources = [y for y in outside if m1.is_independent(current | {y})]
    sinks = {y for y in outside if m2.is_independent(current | {y})}
    if not sources or not sinks:
        return None
    # exchange arcs: x -> y when I - x + y is independent in m1,
    # y -> x when I - x + y is independent in m2
    succ: dict[int, list[int]] = {e: [] for e in range(n)}
    for x in inside:
        rest = current - {x}
        for y in outside:
            swapped = rest | {y}
            if m1.is_independent(swapped):
                succ[x].append(y)
            if m2.is_independent(swapped):
                succ[y].append(x)

    def length(e):
        return key[e] if e in current else -key[e]

    inf = (float("inf"), 0)
    dist = {e: inf for e in range(n)}
    prev: dict[int, int | None] = {}
    for s in sources:
        dist[s] = (length(s), 0)
        prev[s] = None
    # Bellman-Ford; no negative cycles when the current set is extreme
    for _ in range(n):
        changed = False
        for u in range(n):
            du = dist[u]
            if du is inf:
                continue
            for v in succ[u]:
                cand = (du[0] + length(v), du[1] + 1)
                if cand < dist[v]:
                    dist[v] = cand
                    prev[v] = u
                    changed = True
        if not changed:
            break
    reach = [t for t in sinks if dist[t] is not inf]
    if not reach:
        return None
    t = min(reach, key=lambda e: (dist[e], e))
    path = [t]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path


def brute_force_max_weight(m1: Matroid, m2: Matroid, weights: Sequence[int]) -> tuple[frozenset[int], int]:
    """Exhaustive reference with the same tie-break rules; tiny ground sets only."""
    n = len(weights)
    best, best_rank = (), None
    for mask in range(1 << n):
        s = tuple(i for i in range(n) if mask >> i & 1)
        if not (m1.is_independent(s) and m2.is_independent(s)):
            continue
        rank = (sum(weights[i] for i in s), len(s))
        if best_rank is None or rank > best_rank or (rank == best_rank and s < best):
            best, best_rank = s, rank
    return frozenset(best), best_rank[0]
