"""Exhaustive Hamiltonian cycle/path oracles for small graphs."""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence

from .validity import RollbackDSU


def hamiltonian_cycle_through(adj: Mapping[Hashable, Iterable[Hashable]],
                              edge: tuple[Hashable, Hashable]) -> list | None:
    """A Hamiltonian cycle using ``edge`` as a vertex list starting ``edge[0], edge[1]``."""
    a, b = edge
    n = len(adj)
    nbrs = {v: sorted(adj[v], key=repr) for v in adj}
    if b not in nbrs[a]:
        raise ValueError(f"{edge} is not an edge")
    path, seen = [a, b], {a, b}

    def rec(u):
        if len(path) == n:
            return a in nbrs[u]
        for w in nbrs[u]:
            if w not in seen:
                seen.add(w)
                path.append(w)
                if rec(w):
                    return True
                seen.discard(w)
                path.pop()
        return False

    if n == 2:
        return None
    return list(path) if rec(b) else None


def hamiltonian_path(vertices: Sequence[Hashable], edges: Sequence[tuple[Hashable, Hashable]],
                     ends: tuple[Hashable, Hashable], max_nodes: int = 10**7) -> list | None:
    """Hamiltonian path between ``ends`` by edge selection with degree propagation.

    Every vertex needs two chosen edges, the ends one; chosen edges must stay
    acyclic.  A fixed point of those rules with all degrees met is a single
    path covering every vertex.
    """
    idx = {v: i for i, v in enumerate(vertices)}
    n, m = len(vertices), len(edges)
    s, t = idx[ends[0]], idx[ends[1]]
    if s == t:
        return None
    need = [2] * n
    need[s] = need[t] = 1
    E = [(idx[u], idx[v]) for u, v in edges]
    inc: list[list[int]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(E):
        inc[u].append(e)
        inc[v].append(e)
    state = [0] * m  # 0 undecided, 1 in, -1 out
    deg = [0] * n
    free = [len(inc[v]) for v in range(n)]
    dsu = RollbackDSU(n)
    trail: list[int] = []

    def set_edge(e, val):
        state[e] = val
        trail.append(e)
        u, v = E[e]
        free[u] -= 1
        free[v] -= 1
        if val == 1:
            deg[u] += 1
            deg[v] += 1
            return dsu.union(u, v)
        return True

    def undo(mark):
        tl, dl = mark
        while len(trail) > tl:
            e = trail.pop()
            u, v = E[e]
            free[u] += 1
            free[v] += 1
            if state[e] == 1:
                deg[u] -= 1
                deg[v] -= 1
            state[e] = 0
        dsu.undo_to(dl)

    def propagate(queue):
        while queue:
            v = queue.pop()
            if deg[v] > need[v] or deg[v] + free[v] < need[v]:
                return False
            if free[v] == 0:
                continue
            if deg[v] == need[v]:
                val = -1
            elif deg[v] + free[v] == need[v]:
                val = 1
            else:
                continue
            for e in inc[v]:
                if state[e] == 0:
                    if not set_edge(e, val):
                        return False
                    queue.extend(E[e])
        return True

    def prune_cycles():
        changed = []
        for e in range(m):
            if state[e] == 0 and dsu.connected(*E[e]):
                if not set_edge(e, -1):
                    return None
                changed.extend(E[e])
        return changed

    def fixpoint(queue):
        while True:
            if not propagate(queue):
                return False
            queue = prune_cycles()
            if queue is None:
                return False
            if not queue:
                return True

    nodes = 0
    stack = []
    ok = fixpoint(list(range(n)))
    while True:
        if ok:
            branch = None
            best = None
            for v in range(n):
                if deg[v] < need[v] and free[v]:
                    key = free[v] - (need[v] - deg[v])
                    if best is None or key < best:
                        best, branch = key, v
            if branch is None:
                if all(deg[v] == need[v] for v in range(n)):
                    return _walk(vertices, E, state, s)
                ok = False
            else:
                nodes += 1
                if nodes > max_nodes:
                    raise RuntimeError("hamiltonian_path node budget exhausted")
                e = next(e for e in inc[branch] if state[e] == 0)
                stack.append([e, (len(trail), dsu.log_length), False])
                ok = set_edge(e, 1) and fixpoint(list(E[e]))
                continue
        while stack and stack[-1][2]:
            undo(stack.pop()[1])
        if not stack:
            return None
        top = stack[-1]
        undo(top[1])
        top[2] = True
        ok = set_edge(top[0], -1) and fixpoint(list(E[top[0]]))


def _walk(vertices, E, state, s):
    adj: dict[int, list[int]] = {}
    for e, (u, v) in enumerate(E):
        if state[e] == 1:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
    path, prev = [s], None
    while True:
        nxt = [w for w in adj.get(path[-1], []) if w != prev]
        if not nxt:
            break
        prev = path[-1]
        path.append(nxt[0])
    return [vertices[i] for i in path]
