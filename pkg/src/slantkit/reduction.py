"""Hamiltonian cycle (planar, bipartite, cubic, one required edge) to Slant.

Two stages:

1. ``embed_to_grid`` turns an orthogonally embedded graph into a grid graph
   G.  Vertices become 3x3 blocks and edges become width-2 channels; the
   required edge's channel is cut and capped with two degree-1 stubs, so a
   Hamiltonian path of G between the stubs corresponds to a Hamiltonian
   cycle through the required edge.
2. ``emit_slant`` carves G into the even sublattice of a Slant board.  The
   G points get clue 2 (1 at the stubs, 3 at face connections), and every
   lattice vertex next to G is saturated by a forced structure so that no
   diagonal can leave G except at the face connections.

The gadget rules are checked, not trusted: ``verify_forced_edges`` replays
the solver's deductions, and the tests compare solvability against the
exhaustive oracles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .board import BACKSLASH, SLASH, Assignment, Board
from .greedy import extend
from .hamilton import hamiltonian_cycle_through, hamiltonian_path
from .solver import GLYPH, SearchState
from .validity import KeyedDSU

Point = tuple[int, int]
DIRS = ((1, 0), (-1, 0), (0, 1), (0, -1))


class GraphError(ValueError):
    pass


class ScaleTooSmall(ValueError):
    pass


class LayoutConflict(ValueError):
    pass


class TooLarge(ValueError):
    pass


def _neighbors(p: Point) -> Iterable[Point]:
    x, y = p
    for dx, dy in DIRS:
        yield x + dx, y + dy


# -- input graphs -------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    path: tuple[Point, ...]


@dataclass(frozen=True)
class PlanarCubicGraph:
    """An orthogonally embedded planar bipartite graph with a required edge.

    ``cubic=False`` relaxes 3-regularity to maximum degree 3; the pipeline
    handles degree-2 vertices too, which lets tests reach small negative
    instances that cubic graphs do not provide.
    """

    positions: dict[str, Point]
    parts: dict[str, int]
    edges: dict[str, Edge]
    required_edge: str
    cubic: bool = True

    def __post_init__(self):
        if self.required_edge not in self.edges:
            raise GraphError(f"required edge {self.required_edge!r} is not an edge")
        deg = {v: 0 for v in self.positions}
        seen_pairs = set()
        for e in self.edges.values():
            if e.u not in deg or e.v not in deg or e.u == e.v:
                raise GraphError(f"edge {e.id} has bad endpoints")
            pair = frozenset((e.u, e.v))
            if pair in seen_pairs:
                raise GraphError(f"parallel edge {e.id}")
            seen_pairs.add(pair)
            deg[e.u] += 1
            deg[e.v] += 1
            if self.parts[e.u] == self.parts[e.v]:
                raise GraphError(f"edge {e.id} joins two vertices of part {self.parts[e.u]}")
        for v, d in deg.items():
            if d > 3 or (self.cubic and d != 3) or d < 2:
                raise GraphError(f"vertex {v} has degree {d}")
        if set(self.parts) != set(self.positions) or any(p not in (0, 1) for p in self.parts.values()):
            raise GraphError("every vertex needs a part label 0 or 1")
        self._check_embedding()

    def _check_embedding(self):
        at = {}
        for v, p in self.positions.items():
            if p in at:
                raise GraphError(f"vertices {at[p]} and {v} share a position")
            at[p] = v
        used: dict[Point, str] = {}
        for e in self.edges.values():
            path = e.path
            if len(path) < 2 or path[0] != self.positions[e.u] or path[-1] != self.positions[e.v]:
                raise GraphError(f"path of edge {e.id} must run from {e.u} to {e.v}")
            for a, b in zip(path, path[1:]):
                if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
                    raise GraphError(f"path of edge {e.id} takes a non-unit step {a}->{b}")
            if len(set(path)) != len(path):
                raise GraphError(f"path of edge {e.id} revisits a point")
            for p in path[1:-1]:
                if p in at or p in used:
                    raise GraphError(f"path of edge {e.id} collides at {p}")
                used[p] = e.id
        segs = set()
        for e in self.edges.values():
            for a, b in zip(e.path, e.path[1:]):
                s = frozenset((a, b))
                if s in segs:
                    raise GraphError(f"edge {e.id} overlaps another path")
                segs.add(s)

    @property
    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.positions}
        for e in self.edges.values():
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        return adj

    def with_required(self, edge_id: str) -> "PlanarCubicGraph":
        return PlanarCubicGraph(self.positions, self.parts, self.edges, edge_id, self.cubic)

    @classmethod
    def from_json(cls, data: dict | str, cubic: bool = True) -> "PlanarCubicGraph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            positions = {str(v["id"]): (int(v["x"]), int(v["y"])) for v in data["vertices"]}
            parts = {str(v["id"]): int(v["part"]) for v in data["vertices"]}
            edges = {}
            for e in data["edges"]:
                eid = str(e["id"])
                if eid in edges:
                    raise GraphError(f"duplicate edge id {eid}")
                edges[eid] = Edge(eid, str(e["u"]), str(e["v"]),
                                  tuple((int(x), int(y)) for x, y in e["path"]))
            return cls(positions, parts, edges, str(data["requiredEdge"]), cubic)
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "x": p[0], "y": p[1], "part": self.parts[v]}
                         for v, p in self.positions.items()],
            "edges": [{"id": e.id, "u": e.u, "v": e.v, "path": [list(p) for p in e.path]}
                      for e in self.edges.values()],
            "requiredEdge": self.required_edge,
        }


def hamiltonian_cycle_with_edge(p: PlanarCubicGraph) -> list[str] | None:
    if len(p.positions) > 16:
        raise TooLarge(f"{len(p.positions)} vertices exceeds the oracle limit of 16")
    e = p.edges[p.required_edge]
    return hamiltonian_cycle_through(p.adjacency, (e.u, e.v))


# -- stage 1: grid graph --------------------------------------------------------------


@dataclass(frozen=True)
class GridGraphInstance:
    """A grid graph (all unit edges between its points implied) with gadget roles.

    Roles are ``("vertex", id, part)``, ``("channel", edge id)`` or
    ``("startEnd", edge id)``.
    """

    points: frozenset[Point]
    roles: dict[Point, tuple] = field(hash=False, compare=False)
    ends: tuple[Point, Point] = (None, None)
    scale: int = 0

    def degree(self, p: Point) -> int:
        return sum(1 for q in _neighbors(p) if q in self.points)

    def edges(self) -> list[tuple[Point, Point]]:
        out = []
        for p in sorted(self.points):
            for q in ((p[0] + 1, p[1]), (p[0], p[1] + 1)):
                if q in self.points:
                    out.append((p, q))
        return out

    def counts(self) -> dict[str, int]:
        """Gadget tallies; the cut channel counts both as a channel and as start/end."""
        kinds: dict[str, set] = {"vertex": set(), "channel": set(), "startEnd": set()}
        for role in self.roles.values():
            kinds[role[0]].add(role[1])
            if role[0] == "startEnd":
                kinds["channel"].add(role[1])
        return {k: len(v) for k, v in kinds.items()}


SIDES = {(1, 0): "E", (-1, 0): "W", (0, 1): "S", (0, -1): "N"}
STEP = {v: k for k, v in SIDES.items()}
START_END_CUT = 2


def _straight_runs(path) -> list[tuple[Point, Point]]:
    """Maximal collinear stretches of a lattice path as (start, end) pairs."""
    runs = []
    start = 0
    for i in range(1, len(path) - 1):
        a, b, c = path[i - 1], path[i], path[i + 1]
        if (b[0] - a[0], b[1] - a[1]) != (c[0] - b[0], c[1] - b[1]):
            runs.append((path[start], b))
            start = i
    runs.append((path[start], path[-1]))
    return runs


def _side_geometry(origin: Point, side: str, sigma: int):
    """(lower lane, corner, mid) of a block port; lanes run perpendicular to the side."""
    bx, by = origin
    if side == "E":
        return by + sigma, (bx + 2, by + 2 * sigma), (bx + 2, by + 1)
    if side == "W":
        return by + sigma, (bx, by + 2 * sigma), (bx, by + 1)
    if side == "N":
        return bx + sigma, (bx + 2 * sigma, by), (bx + 1, by)
    return bx + sigma, (bx + 2 * sigma, by + 2), (bx + 1, by + 2)


def _block_paths_ok(corners: dict[str, Point], mids: dict[str, Point]) -> bool:
    """Whether every choice of two used ports admits a block traversal.

    The traversal runs corner to corner through all nine points and, for a
    third (unused) port, uses its corner-mid edge, where the U-turn covering
    that port's half channel is spliced in.
    """
    if len(set(corners.values())) != len(corners):
        return False
    pts = [(i, j) for i in range(3) for j in range(3)]
    edges = [(p, q) for p in pts for q in ((p[0] + 1, p[1]), (p[0], p[1] + 1)) if q in pts]
    sides = sorted(corners)
    for a in range(len(sides)):
        for b in range(a + 1, len(sides)):
            rest = [x for x in sides if x not in (sides[a], sides[b])]
            if not _has_block_path(pts, edges, corners[sides[a]], corners[sides[b]],
                                   [(corners[x], mids[x]) for x in rest]):
                return False
    return True


_BLOCK_CACHE: dict = {}


def _has_block_path(pts, edges, s, t, must):
    key = (s, t, tuple(must))
    if key not in _BLOCK_CACHE:
        found = False
        for path in _all_paths(pts, edges, s, t):
            used = {frozenset(e) for e in zip(path, path[1:])}
            if all(frozenset(m) in used for m in must):
                found = True
                break
        _BLOCK_CACHE[key] = found
    return _BLOCK_CACHE[key]


def _all_paths(pts, edges, s, t):
    adj = {p: [] for p in pts}
    for p, q in edges:
        adj[p].append(q)
        adj[q].append(p)
    path = [s]

    def rec():
        if len(path) == len(pts):
            if path[-1] == t:
                yield list(path)
            return
        for q in adj[path[-1]]:
            if q not in path and (q != t or len(path) == len(pts) - 1):
                path.append(q)
                yield from rec()
                path.pop()

    yield from rec()


def _ports(p: PlanarCubicGraph) -> dict[str, dict[str, str]]:
    """ports[v][side] = edge id leaving v on that side."""
    out: dict[str, dict[str, str]] = {v: {} for v in p.positions}
    for e in p.edges.values():
        for v, nxt in ((e.u, e.path[1]), (e.v, e.path[-2])):
            P = p.positions[v]
            side = SIDES[(nxt[0] - P[0], nxt[1] - P[1])]
            out[v][side] = e.id
    return out


SHIFTS = {0: [(0, 0), (1, 1), (-1, -1), (1, -1), (-1, 1)],
          1: [(1, 0), (0, 1), (-1, 0), (0, -1)]}


def _layout(p: PlanarCubicGraph, s: int):
    """Block shifts and port lane offsets.

    Blocks of the two classes get opposite colour surpluses (a shift with
    odd coordinate sum for class 1), and every straight channel must see its
    two lanes differ by exactly one so that a single jog joins them.
    """
    ports = _ports(p)
    order = sorted(p.positions)
    choice: dict[str, tuple] = {}
    straight = [e for e in p.edges.values() if len(_straight_runs(e.path)) == 1]

    def options(v):
        X, Y = p.positions[v]
        sides = sorted(ports[v])
        for dx, dy in SHIFTS[p.parts[v]]:
            origin = (s * X + dx, s * Y + dy)
            for bits in range(1 << len(sides)):
                sig = {side: bits >> i & 1 for i, side in enumerate(sides)}
                geo = {side: _side_geometry(origin, side, sig[side]) for side in sides}
                rel = lambda q: (q[0] - origin[0], q[1] - origin[1])  # noqa: E731
                if _block_paths_ok({k: rel(g[1]) for k, g in geo.items()},
                                   {k: rel(g[2]) for k, g in geo.items()}):
                    yield origin, geo

    def lane_of(v, eid):
        origin, geo = choice[v]
        side = next(k for k, x in ports[v].items() if x == eid)
        return geo[side][0]

    def consistent():
        for e in straight:
            if e.u in choice and e.v in choice:
                if abs(lane_of(e.u, e.id) - lane_of(e.v, e.id)) != 1:
                    return False
        return True

    def rec(i):
        if i == len(order):
            return True
        v = order[i]
        for opt in options(v):
            choice[v] = opt
            if consistent() and rec(i + 1):
                return True
            del choice[v]
        return False

    if not rec(0):
        raise ScaleTooSmall("no block layout satisfies the channel constraints")
    return choice, ports


def _rect(along: tuple[int, int], perp: int, axis: int) -> list[Point]:
    lo, hi = min(along), max(along)
    out = []
    for a in range(lo, hi + 1):
        for b in (perp, perp + 1):
            out.append((a, b) if axis == 0 else (b, a))
    return out


def _channel(p, e, choice, ports, s):
    """Points of one channel split at its jog: (half near u, half near v, info)."""
    runs = _straight_runs(e.path)
    k = len(runs)
    (ou, gu), (ov, gv) = choice[e.u], choice[e.v]
    side_u = next(x for x, eid in ports[e.u].items() if eid == e.id)
    side_v = next(x for x, eid in ports[e.v].items() if eid == e.id)
    lane_u, corner_u, mid_u = gu[side_u]
    lane_v, corner_v, mid_v = gv[side_v]
    jog = max(range(k), key=lambda i: (abs(runs[i][1][0] - runs[i][0][0]) + abs(runs[i][1][1] - runs[i][0][1]), -i))
    # lane before and after each run (equal except on the jog run)
    before, after = [], []
    for i, (A, B) in enumerate(runs):
        axis = 0 if A[1] == B[1] else 1
        base = s * A[1 - axis]
        lo = lane_u if i == 0 else base
        hi = lane_v if i == k - 1 else base
        if i == jog:
            if k == 1:
                pass
            elif i == 0:
                hi = lo + 1
            elif i == k - 1:
                lo = hi - 1
            else:
                hi = lo + 1
        else:
            hi = lo = (lane_u if i == 0 else lane_v if i == k - 1 else base)
        before.append(lo)
        after.append(hi)
    # along-axis extents
    spans = []
    for i, (A, B) in enumerate(runs):
        axis = 0 if A[1] == B[1] else 1
        d = 1 if B[axis] > A[axis] else -1
        if i == 0:
            start = (corner_u[axis] + d) if d == 1 else (corner_u[axis] + d)
        else:
            prev = after[i - 1]
            start = prev if d == 1 else prev + 1
        if i == k - 1:
            end = corner_v[axis] - d
        else:
            nxt = before[i + 1]
            end = nxt + 1 if d == 1 else nxt
        spans.append((axis, d, start, end))
    half_u: list[Point] = []
    half_v: list[Point] = []
    for i, (axis, d, start, end) in enumerate(spans):
        if i < jog:
            half_u += _rect((start, end), before[i], axis)
        elif i > jog:
            half_v += _rect((start, end), after[i], axis)
    axis, d, start, end = spans[jog]
    return dict(runs=runs, jog=jog, axis=axis, d=d, start=start, end=end,
                lo=before[jog], hi=after[jog], half_u=half_u, half_v=half_v,
                entry_u=(corner_u, mid_u), entry_v=(corner_v, mid_v))


def _outside(block_pt: Point, side: str) -> Point:
    dx, dy = STEP[side]
    return block_pt[0] + dx, block_pt[1] + dy


def _split_at(info, j):
    """Both halves when the jog run switches lanes after along-coordinate ``j``."""
    axis, d, start, end = info["axis"], info["d"], info["start"], info["end"]
    first = _rect((start, j), info["lo"], axis)
    second = _rect((j + d, end), info["hi"], axis)
    return info["half_u"] + first, second + info["half_v"]


def _ham_ok(points, a, b) -> bool:
    pts = sorted(set(points))
    if a not in pts or b not in pts:
        return False
    ptset = set(pts)
    edges = [(q, r) for q in pts for r in ((q[0] + 1, q[1]), (q[0], q[1] + 1)) if r in ptset]
    return hamiltonian_path(pts, edges, (a, b), max_nodes=10**5) is not None


def embed_to_grid(p: PlanarCubicGraph, scale: int) -> GridGraphInstance:
    """Blow the embedding up by ``scale`` and insert the gadgets."""
    s = scale
    if s < 4:
        raise ScaleTooSmall(f"scale {s} leaves no room between 3x3 blocks")
    choice, ports = _layout(p, s)
    owner: dict[Point, tuple] = {}

    def claim(q: Point, role: tuple):
        if q in owner and owner[q] != role:
            raise ScaleTooSmall(f"scale {s}: gadgets {owner[q]} and {role} overlap at {q}")
        owner[q] = role

    blocks = {}
    for v in p.positions:
        bx, by = choice[v][0]
        blocks[v] = {(bx + i, by + j) for i in range(3) for j in range(3)}
        for q in blocks[v]:
            claim(q, ("vertex", v, p.parts[v]))
    ends = (None, None)
    for e in p.edges.values():
        info = _channel(p, e, choice, ports, s)
        side_u = next(x for x, eid in ports[e.u].items() if eid == e.id)
        side_v = next(x for x, eid in ports[e.v].items() if eid == e.id)
        cu, mu = (_outside(q, side_u) for q in info["entry_u"])
        cv, mv = (_outside(q, side_v) for q in info["entry_v"])
        axis, d = info["axis"], info["d"]
        bridge_row = max(info["lo"], info["hi"])  # the lane the two sides share
        span = sorted((info["start"], info["end"]))
        candidates = list(range(span[0] + 1, span[1] - 1))
        mid = (span[0] + span[1]) / 2
        candidates.sort(key=lambda j: (abs(j - mid), j))
        done = False
        for j in candidates:
            h1, h2 = _split_at(info, j)
            b1 = (j, bridge_row) if axis == 0 else (bridge_row, j)
            b2 = (j + d, bridge_row) if axis == 0 else (bridge_row, j + d)
            if not (_ham_ok(h1, cu, b1) and _ham_ok(h1, cu, mu)
                    and _ham_ok(h2, b2, cv) and _ham_ok(h2, cv, mv)):
                continue
            if e.id == p.required_edge:
                got = _start_end(h1, h2, cu, cv, info, j, s)
                if got is None:
                    continue
                h1, h2, ends = got
                role = ("startEnd", e.id)
            else:
                role = ("channel", e.id)
            for q in h1 + h2:
                claim(q, role)
            done = True
            break
        if not done:
            raise ScaleTooSmall(f"scale {s}: no jog position works for channel {e.id}")
    _check_layout(p, owner, blocks, s)
    g = GridGraphInstance(frozenset(owner), owner, ends, s)
    ones = sorted(q for q in g.points if g.degree(q) == 1)
    if ones != sorted(ends):
        raise ScaleTooSmall(f"scale {s}: expected degree-1 points {sorted(ends)}, found {ones}")
    return g


def _start_end(h1, h2, cu, cv, info, j, s):
    """Cut the required channel at its jog and cap both halves with stubs."""
    axis, d = info["axis"], info["d"]
    along = (lambda q: q[axis])
    for cut in (START_END_CUT, START_END_CUT + 1):
        a = [q for q in h1 if not (0 <= (j - along(q)) * d < cut and q[1 - axis] in (info["lo"], info["lo"] + 1) and _on_run(q, info))]
        b = [q for q in h2 if not (0 < (along(q) - j) * d <= cut and q[1 - axis] in (info["hi"], info["hi"] + 1) and _on_run(q, info))]
        end_a = j - d * cut
        end_b = j + d * (cut + 1)
        for sa in _stub_options(a, end_a, info["lo"], axis):
            if not _ham_ok(a + [sa], sa, cu):
                continue
            for sb in _stub_options(b, end_b, info["hi"], axis):
                if abs(sa[0] - sb[0]) + abs(sa[1] - sb[1]) <= 1:
                    continue
                if _ham_ok(b + [sb], sb, cv):
                    return a + [sa], b + [sb], (sa, sb)
    return None


def _on_run(q, info):
    lo, hi = sorted((info["start"], info["end"]))
    return lo <= q[info["axis"]] <= hi


def _stub_options(points, end, lane, axis):
    pts = set(points)
    for perp, out in ((lane, lane - 1), (lane + 1, lane + 2)):
        base = (end, perp) if axis == 0 else (perp, end)
        stub = (end, out) if axis == 0 else (out, end)
        if base in pts and stub not in pts:
            if sum(1 for r in _neighbors(stub) if r in pts) == 1:
                yield stub


def _check_layout(p, owner, blocks, s):
    """Different gadgets may touch only where a channel meets its own blocks."""
    edges = p.edges
    for q, role in owner.items():
        for r in _neighbors(q):
            other = owner.get(r)
            if other is None or other == role:
                continue
            if {role[0], other[0]} == {"vertex"}:
                raise ScaleTooSmall(f"scale {s}: blocks {role[1]} and {other[1]} touch")
            if role[0] != "vertex" and other[0] != "vertex":
                raise ScaleTooSmall(f"scale {s}: channels {role[1]} and {other[1]} touch at {q}")
            ch, vx = (role, other) if other[0] == "vertex" else (other, role)
            if vx[1] not in (edges[ch[1]].u, edges[ch[1]].v):
                raise ScaleTooSmall(f"scale {s}: channel {ch[1]} touches block {vx[1]}")
    for e in edges.values():
        for v in (e.u, e.v):
            touching = {(q, r) for q in blocks[v] for r in _neighbors(q)
                        if r in owner and owner[r][0] != "vertex" and owner[r][1] == e.id}
            if len(touching) != 2:
                raise ScaleTooSmall(f"scale {s}: channel {e.id} meets block {v} {len(touching)} times")


GRID_ORACLE_LIMIT = 1000


def grid_hamiltonian_path(g: GridGraphInstance, limit: int = GRID_ORACLE_LIMIT,
                          max_nodes: int = 10**7) -> list[Point] | None:
    """Hamiltonian path of ``g`` between its two degree-1 points, or None.

    Declared ``ends`` must be two distinct stubs that are exactly those
    degree-1 points; a lone stub is not a Start/End gadget.
    """
    if len(g.points) > limit:
        raise TooLarge(f"{len(g.points)} points exceeds the oracle limit of {limit}")
    ones = [q for q in sorted(g.points) if g.degree(q) == 1]
    declared = {e for e in g.ends if e is not None}
    if len(ones) != 2 or (declared and declared != set(ones)):
        return None
    return hamiltonian_path(sorted(g.points), g.edges(), (ones[0], ones[1]), max_nodes=max_nodes)


# -- stage 2: Slant board -------------------------------------------------------------
#
# G point (u, w) sits at Slant vertex (u - w + x0, u + w + y0), so a unit step
# of G is one even diagonal.  Lattice points next to G (the first layer) are
# saturated by two local gadgets:
#
# * pair: two adjacent 1-clues a1, a2 on a square whose centre (an odd vertex)
#   has clue 1.  The a1-a2 edge would isolate them, so the dual 1 takes that
#   cell and the other three sides of the square are forced;
# * star: a 4-clue forcing its four edges.
#
# First-layer vertices touched by these edges get a clue equal to their forced
# degree, which blocks every edge into G.  Each face of G (a component of the
# lattice minus G) gets one connector: a 4-clue hub on the wall joined to a
# 3-clue of G.


@dataclass(frozen=True)
class FaceGadget:
    """Face connector: ``hub`` (clue 4) is joined to ``attach`` (clue 3) in G."""

    face: int
    attach: Point
    hub: Point
    slant_attach: tuple[int, int]
    slant_hub: tuple[int, int]


@dataclass(frozen=True)
class ReductionOutput:
    """The emitted board with its provenance.

    ``barrier`` holds every clued vertex outside S_G, including the odd
    vertices that carry the dual 1-clues of pair gadgets.  ``forcedEdges``
    maps each cell the construction decides to its glyph.
    """

    board: Board
    sGMap: dict[Point, tuple[int, int]]
    barrier: frozenset[tuple[int, int]]
    faceGadgets: tuple[FaceGadget, ...]
    forcedEdges: dict[tuple[int, int], str]
    ends: tuple[Point, Point]
    grid: GridGraphInstance | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "rows": self.board.rows,
            "cols": self.board.cols,
            "sGMap": [[list(p), list(v)] for p, v in sorted(self.sGMap.items())],
            "ends": [list(e) for e in self.ends],
            "barrier": sorted(list(v) for v in self.barrier),
            "faceGadgets": [{"face": f.face, "attach": list(f.attach), "hub": list(f.hub),
                             "slantAttach": list(f.slant_attach), "slantHub": list(f.slant_hub)}
                            for f in self.faceGadgets],
            "forcedEdges": [[x, y, ch] for (x, y), ch in sorted(self.forcedEdges.items())],
        }


class _Frame:
    """Coordinate map between G's lattice and the Slant board."""

    def __init__(self, points: Iterable[Point], pad: int):
        us = [p[0] for p in points]
        ws = [p[1] for p in points]
        umin, umax, wmin, wmax = min(us) - pad, max(us) + pad, min(ws) - pad, max(ws) + pad
        self.x0 = wmax - umin
        self.y0 = -umin - wmin
        if (self.x0 + self.y0) % 2:
            self.x0 += 1
        self.cols = umax - wmin + self.x0
        self.rows = umax + wmax + self.y0

    def slant(self, p: Point) -> tuple[int, int]:
        return p[0] - p[1] + self.x0, p[0] + p[1] + self.y0

    def lattice(self, v: tuple[int, int]) -> Point:
        x, y = v[0] - self.x0, v[1] - self.y0
        return (x + y) // 2, (y - x) // 2

    def inside(self, p: Point) -> bool:
        x, y = self.slant(p)
        return 0 <= x <= self.cols and 0 <= y <= self.rows

    def interior(self, p: Point) -> bool:
        x, y = self.slant(p)
        return 0 < x < self.cols and 0 < y < self.rows

    def cell(self, p: Point, q: Point) -> tuple[tuple[int, int], str]:
        """Cell holding the even diagonal p-q, and that diagonal's glyph."""
        (x1, y1), (x2, y2) = self.slant(p), self.slant(q)
        glyph = BACKSLASH if (x2 - x1) == (y2 - y1) else SLASH
        return (min(x1, x2), min(y1, y2)), glyph

    def face_centre(self, corners: Iterable[Point]) -> tuple[int, int]:
        vs = [self.slant(c) for c in corners]
        return sum(v[0] for v in vs) // 4, sum(v[1] for v in vs) // 4


def _key(p: Point, q: Point) -> tuple[Point, Point]:
    return (p, q) if p <= q else (q, p)


class _Cover:
    """Backtracking placement of pair and star gadgets over the first layer."""

    def __init__(self, frame: _Frame, points: frozenset, layer1: set, max_steps: int):
        self.frame = frame
        self.points = points
        self.layer1 = layer1
        self.max_steps = max_steps
        self.steps = 0
        self.edges: set[tuple[Point, Point]] = set()
        self.adj: dict[Point, set[Point]] = {}
        self.blocked: set[tuple[Point, Point]] = set()
        self.deg: dict[Point, int] = {}
        self.sealed: dict[Point, int] = {}  # vertex -> clue; takes no further edges
        self.pairs: list[tuple[Point, Point, Point, Point]] = []
        self.stars: list[Point] = []
        self.log: list[tuple] = []
        self.dsu = KeyedDSU()
        # option lists are cached per vertex and dropped when a nearby tile changes;
        # they only steer the search, every placement is rechecked
        self.clock = 0
        self.probing = False
        self.tile_clock: dict[Point, int] = {}
        self.cache: dict[Point, tuple[int, list]] = {}

    # -- primitive moves with undo --------------------------------------------------

    def _usable(self, q: Point) -> bool:
        return q not in self.points and self.frame.interior(q) and q not in self.sealed

    def _add_edges(self, edges) -> bool:
        new = [e for e in (_key(*e) for e in edges) if e not in self.edges]
        if any(e in self.blocked for e in new):
            return False
        start = self.dsu.dsu.log_length
        for a, b in new:
            if not self.dsu.union(a, b):
                self.dsu.dsu.undo_to(start)
                return False
        for a, b in new:
            self.edges.add((a, b))
            self.adj.setdefault(a, set()).add(b)
            self.adj.setdefault(b, set()).add(a)
            self.deg[a] = self.deg.get(a, 0) + 1
            self.deg[b] = self.deg.get(b, 0) + 1
            self._touch(a, b)
        self.log.append(("edges", new))
        return True

    def mark(self):
        return len(self.log), self.dsu.dsu.log_length

    def _touch(self, *pts):
        if self.probing:
            return
        self.clock += 1
        for q in pts:
            self.tile_clock[(q[0] >> 2, q[1] >> 2)] = self.clock

    def _stale(self, v: Point, since: int) -> bool:
        tx, ty = v[0] >> 2, v[1] >> 2
        return any(self.tile_clock.get((tx + i, ty + j), 0) > since
                   for i in (-1, 0, 1) for j in (-1, 0, 1))

    def undo(self, mark):
        n, dsu_state = mark
        while len(self.log) > n:
            kind, data = self.log.pop()
            if kind == "edges":
                for a, b in data:
                    self._touch(a, b)
                    self.edges.discard((a, b))
                    self.adj[a].discard(b)
                    self.adj[b].discard(a)
                    for v in (a, b):
                        self.deg[v] -= 1
                        if not self.deg[v]:
                            del self.deg[v]
            elif kind == "seal":
                self._touch(data)
                del self.sealed[data]
            elif kind == "block":
                self.blocked.discard(data)
            elif kind == "pair":
                self.pairs.pop()
            elif kind == "star":
                self.stars.pop()
        self.dsu.dsu.undo_to(dsu_state)

    def _seal(self, v: Point, clue: int):
        self.sealed[v] = clue
        self._touch(v)
        self.log.append(("seal", v))

    def place_pair(self, a1, a2, n) -> bool:
        g1, g2 = (a1[0] + n[0], a1[1] + n[1]), (a2[0] + n[0], a2[1] + n[1])
        if not all(self._usable(q) for q in (a1, a2, g1, g2)):
            return False
        if self.deg.get(a1) or self.deg.get(a2) or _key(a1, a2) in self.edges:
            return False
        if g1 in self.layer1 and g2 in self.layer1 and not (self.deg.get(g1) or self.deg.get(g2)):
            return False  # the U would be sealed off
        mark = self.mark()
        if not self._add_edges([(a1, g1), (g1, g2), (a2, g2)]):
            self.undo(mark)
            return False
        if any(a not in self.layer1 and not self._keeps_open(a) for a in (a1, a2)):
            self.undo(mark)
            return False
        self.blocked.add(_key(a1, a2))
        self.log.append(("block", _key(a1, a2)))
        self._seal(a1, 1)
        self._seal(a2, 1)
        self.pairs.append((a1, a2, g1, g2))
        self.log.append(("pair", None))
        return True

    def place_star(self, z, clue=4, allow_g=False) -> bool:
        if not self._usable(z) or self.deg.get(z):
            return False
        if z in self.layer1 and not allow_g:
            return False
        nbrs = list(_neighbors(z))
        if not allow_g and any(q in self.points for q in nbrs):
            return False
        others = [q for q in nbrs if q not in self.points]
        if any(q in self.sealed or not self.frame.inside(q) for q in others):
            return False
        if not allow_g and all(q in self.layer1 for q in nbrs):
            return False
        if z not in self.layer1 and not self._keeps_open(z):
            return False
        mark = self.mark()
        if not self._add_edges([(z, q) for q in nbrs]):
            self.undo(mark)
            return False
        self._seal(z, clue)
        self.stars.append(z)
        self.log.append(("star", None))
        return True

    # -- search ---------------------------------------------------------------------

    def options(self, v: Point):
        """Ways to cover first-layer vertex ``v``, best first."""
        out = []
        for t in DIRS:
            w = (v[0] + t[0], v[1] + t[1])
            for n in ((t[1], t[0]), (-t[1], -t[0])):
                g1, g2 = (v[0] + n[0], v[1] + n[1]), (w[0] + n[0], w[1] + n[1])
                score = (w not in self.layer1) + (g1 in self.layer1) + (g2 in self.layer1)
                out.append((score, 0, ("pair", v, w, n)))
        for n in DIRS:
            out.append((3, 1, ("star", (v[0] + n[0], v[1] + n[1]))))
        out.sort(key=lambda o: (o[0], o[1]))
        return [o[2] for o in out]

    def apply(self, opt) -> bool:
        if opt[0] == "pair":
            ok = self.place_pair(opt[1], opt[2], opt[3])
            touched = opt[1:3]
        else:
            ok = self.place_star(opt[1])
            touched = list(_neighbors(opt[1]))
        return ok and all(self.alive(v) for v in touched if v not in self.points)

    def _clued(self, v: Point) -> bool:
        return v in self.points or v in self.layer1 or v in self.sealed

    def _open(self, v: Point) -> bool:
        return not self._clued(v) and self.frame.inside(v)

    def alive(self, v: Point) -> bool:
        """Whether the forced tree through ``v`` (G excluded) holds an unclued vertex.

        Unclued vertices of a face stay connected (see ``_keeps_open``), so
        such a tree can always be joined to the rest of its face; a tree of
        clued vertices only would be ringed by a dual cycle.
        """
        seen, stack = {v}, [v]
        while stack:
            q = stack.pop()
            if self._open(q):
                return True
            for r in self.adj.get(q, ()):
                if r not in seen and r not in self.points:
                    seen.add(r)
                    stack.append(r)
        return False

    def _keeps_open(self, v: Point, radius: int = 3) -> bool:
        """Clueing ``v`` leaves its open neighbours connected within a small window."""
        nbrs = [q for q in _neighbors(v) if self._open(q)]
        if len(nbrs) <= 1:
            return True
        seen, stack = {nbrs[0]}, [nbrs[0]]
        while stack:
            q = stack.pop()
            for r in _neighbors(q):
                if (r != v and r not in seen and self._open(r)
                        and abs(r[0] - v[0]) <= radius and abs(r[1] - v[1]) <= radius):
                    seen.add(r)
                    stack.append(r)
        return all(q in seen for q in nbrs)

    def uncovered(self):
        return [v for v in sorted(self.layer1) if not self.deg.get(v) and v not in self.sealed]

    def solve(self) -> bool:
        todo = self.uncovered()
        if not todo:
            return all(self.alive(v) for v in self.deg if v not in self.points)
        self.steps += 1
        if self.steps > self.max_steps:
            raise LayoutConflict("barrier placement search exhausted its step budget")
        # most constrained vertex first
        best, best_opts = None, None
        for v in todo:
            hit = self.cache.get(v)
            if hit is None or not hit[1] or self._stale(v, hit[0]):
                opts = [o for o in self.options(v) if self._feasible(o)]
                self.cache[v] = (self.clock, opts)
            else:
                opts = hit[1]
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = v, opts
                if len(opts) <= 1:
                    break
        for opt in best_opts:
            mark = self.mark()
            if self.apply(opt) and self.solve():
                return True
            self.undo(mark)
        return False

    def _feasible(self, opt) -> bool:
        mark = self.mark()
        self.probing = True
        try:
            return self.apply(opt)
        finally:
            self.undo(mark)
            self.probing = False


def _faces(frame: _Frame, points: frozenset) -> list[set[Point]]:
    """Components of the board lattice minus G, the outer one first."""
    pad_pts = []
    for x in range(frame.cols + 1):
        for y in range(frame.rows + 1):
            if (x + y - frame.x0 - frame.y0) % 2 == 0:
                pad_pts.append(frame.lattice((x, y)))
    free = set(pad_pts) - points
    faces, seen = [], set()
    for start in sorted(free):
        if start in seen:
            continue
        comp, stack = {start}, [start]
        seen.add(start)
        while stack:
            q = stack.pop()
            for r in _neighbors(q):
                if r in free and r not in seen:
                    seen.add(r)
                    comp.add(r)
                    stack.append(r)
        faces.append(comp)
    faces.sort(key=lambda f: (not any(not frame.interior(q) for q in f), min(f)))
    return faces


def _connector_candidates(face, points, layer1, g: GridGraphInstance, frame: _Frame):
    """Wall vertices of ``face`` able to host a hub, lexicographically."""
    out = []
    for q in sorted(face & layer1):
        inner = [r for r in _neighbors(q) if r in points]
        if len(inner) != 1:
            continue
        p = inner[0]
        if p in g.ends or g.degree(p) < 2:
            continue
        d = (q[0] - p[0], q[1] - p[1])
        beyond = (q[0] + d[0], q[1] + d[1])
        side = [(q[0] + d[1], q[1] + d[0]), (q[0] - d[1], q[1] - d[0])]
        # a straight stretch of wall, with room behind it
        if beyond in layer1 or not frame.interior(beyond):
            continue
        if any(r not in layer1 or sum(1 for t in _neighbors(r) if t in points) != 1 for r in side):
            continue
        out.append((p, q))
    return out


def emit_slant(g: GridGraphInstance, margin: int = 2, max_steps: int = 200_000) -> ReductionOutput:
    """Carve ``g`` into a Slant board whose solutions are its Hamiltonian paths."""
    if margin < 2:
        raise ValueError("margin must be at least 2")
    points = g.points
    if not points:
        raise GraphError("empty grid graph")
    frame = _Frame(points, margin + 3)
    layer1 = {q for p in points for q in _neighbors(p) if q not in points}
    faces = _faces(frame, points)
    cover = _Cover(frame, points, layer1, max_steps)
    gadgets: list[FaceGadget] = []
    attached: set[Point] = set()
    for i, face in enumerate(faces):
        placed = False
        for p, q in _connector_candidates(face, points, layer1, g, frame):
            if p in attached:
                continue
            mark = cover.mark()
            if cover.place_star(q, allow_g=True):
                gadgets.append(FaceGadget(i, p, q, frame.slant(p), frame.slant(q)))
                attached.add(p)
                placed = True
                break
            cover.undo(mark)
        if not placed:
            raise LayoutConflict(f"face {i} has no straight wall for a connector")
    if not cover.solve():
        raise LayoutConflict("no barrier placement saturates every vertex next to G")

    clues: dict[Point, int] = {}
    for p in points:
        clues[p] = 1 if p in g.ends else 2
    for f in gadgets:
        clues[f.attach] = 3
    for q in layer1:
        clues[q] = cover.sealed.get(q, cover.deg.get(q, 0))
    for q, k in cover.sealed.items():
        if clues.setdefault(q, k) != k:
            raise LayoutConflict(f"vertex {q} wants clues {clues[q]} and {k}")

    forced: dict[tuple[int, int], str] = {}
    for q, k in clues.items():
        if q in points:
            continue
        for r in _neighbors(q):
            cell, glyph = frame.cell(q, r)
            want = glyph if _key(q, r) in cover.edges else _other(glyph)
            if forced.setdefault(cell, want) != want:
                raise LayoutConflict(f"cell {cell} forced both ways")
    for q, r in cover.edges:
        cell, glyph = frame.cell(q, r)
        if forced.setdefault(cell, glyph) != glyph:
            raise LayoutConflict(f"cell {cell} forced both ways")
    slant_clues = {frame.slant(q): k for q, k in clues.items()}
    dual = set()
    for a1, a2, g1, g2 in cover.pairs:
        c = frame.face_centre((a1, a2, g1, g2))
        if c in slant_clues:
            raise LayoutConflict(f"dual clue at {c} collides")
        slant_clues[c] = 1
        dual.add(c)
    board = Board(frame.rows, frame.cols, slant_clues)
    barrier = frozenset({frame.slant(q) for q in clues if q not in points} | dual)
    return ReductionOutput(board, {p: frame.slant(p) for p in sorted(points)}, barrier,
                           tuple(gadgets), forced, tuple(g.ends), g)


def _other(glyph: str) -> str:
    return SLASH if glyph == BACKSLASH else BACKSLASH


def lift_witness(r: ReductionOutput, a: Assignment) -> list[Point] | None:
    """Walk the S_G diagonals of a solution; the G path they trace, or None.

    None means the diagonals on S_G do not form a Hamiltonian path between
    the two ends, which would refute the reduction.
    """
    slant_to_g = {v: p for p, v in r.sGMap.items()}
    adj: dict[Point, list[Point]] = {p: [] for p in r.sGMap}
    for edge in a.edges():
        p, q = slant_to_g.get(edge.u), slant_to_g.get(edge.v)
        if p is not None and q is not None:
            adj[p].append(q)
            adj[q].append(p)
    start = r.ends[0]
    path, prev = [start], None
    while True:
        nxt = [q for q in adj[path[-1]] if q != prev]
        if len(nxt) != 1:
            break
        prev = path[-1]
        path.append(nxt[0])
        if len(path) > len(adj):
            return None
    if len(path) != len(adj) or path[-1] != r.ends[1]:
        return None
    return path


def witness_from_path(r: ReductionOutput, path: list[Point]) -> Assignment:
    """A full solution built from a Hamiltonian path of G.

    Fixes the S_G diagonals and the construction's forced cells, then lets
    ``extend`` fill the rest.  Raises ValueError when that partial board has
    a cycle, which would mean the face connectors failed.
    """
    b = r.board
    a = Assignment(b.rows, b.cols)
    for cell, glyph in r.forcedEdges.items():
        a[cell] = glyph
    on_path = {_key(p, q) for p, q in zip(path, path[1:])}
    for p, v in r.sGMap.items():
        for q in _neighbors(p):
            w = r.sGMap.get(q)
            if w is None:
                continue
            cell = (min(v[0], w[0]), min(v[1], w[1]))
            glyph = BACKSLASH if (w[0] - v[0]) == (w[1] - v[1]) else SLASH
            a[cell] = glyph if _key(p, q) in on_path else _other(glyph)
    return extend(a)


def verify_forced_edges(r: ReductionOutput) -> "ForcingReport":
    """Replay the solver's deductions from the empty board against ``forcedEdges``."""
    state = SearchState(r.board)
    if not state.propagate():
        c = state.contradiction
        return ForcingReport(False, contradiction=f"{c.rule} at {c.where}")
    missing, wrong = [], []
    cols = r.board.cols
    for (x, y), glyph in sorted(r.forcedEdges.items()):
        got = state.val[y * cols + x]
        if not got:
            missing.append((x, y))
        elif GLYPH[got] != glyph:
            wrong.append((x, y))
    return ForcingReport(not missing and not wrong, tuple(missing), tuple(wrong))


@dataclass(frozen=True)
class ForcingReport:
    ok: bool
    unforced: tuple[tuple[int, int], ...] = ()
    contradicted: tuple[tuple[int, int], ...] = ()
    contradiction: str | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        if self.contradiction:
            return f"propagation contradiction: {self.contradiction}"
        parts = []
        if self.unforced:
            parts.append(f"{len(self.unforced)} unforced cells, first {list(self.unforced[:5])}")
        if self.contradicted:
            parts.append(f"{len(self.contradicted)} cells forced the other way, "
                         f"first {list(self.contradicted[:5])}")
        return "; ".join(parts)


# -- pipeline ---------------------------------------------------------------------------

DEFAULT_SCALES = tuple(range(6, 13))


def reduce(p: PlanarCubicGraph, scale: int | None = None, margin: int = 2) -> ReductionOutput:
    """Embed into a grid graph and emit the board, trying scales upward when none is given."""
    scales = (scale,) if scale is not None else DEFAULT_SCALES
    last: Exception | None = None
    for s in scales:
        try:
            return emit_slant(embed_to_grid(p, s), margin)
        except (ScaleTooSmall, LayoutConflict) as exc:
            last = exc
    assert last is not None
    raise last


def remove_edge(p: PlanarCubicGraph, edge_id: str) -> PlanarCubicGraph:
    """``p`` without one edge (and its channel); the result has degree-2 vertices."""
    if edge_id == p.required_edge:
        raise GraphError("cannot remove the required edge")
    edges = {k: e for k, e in p.edges.items() if k != edge_id}
    if len(edges) == len(p.edges):
        raise GraphError(f"no edge {edge_id!r}")
    return PlanarCubicGraph(p.positions, p.parts, edges, p.required_edge, cubic=False)


# -- naive embedder -----------------------------------------------------------------------

EMBED_LIMIT = 8


def embed_naive(edges: Iterable[tuple[str, str]], required: tuple[str, str],
                spacing: int = 3, max_nodes: int = 200_000) -> PlanarCubicGraph:
    """Orthogonal embedding of a tiny graph by exhaustive placement and BFS routing.

    Vertices go on a ``spacing``-pitched grid; each edge is routed by a
    shortest lattice path avoiding everything drawn so far.  Placements are
    searched exhaustively, routes are not, so a planar graph can still be
    refused.
    """
    import networkx as nx

    gr = nx.Graph()
    gr.add_edges_from(edges)
    n = gr.number_of_nodes()
    if n > EMBED_LIMIT:
        raise TooLarge(f"the naive embedder handles at most {EMBED_LIMIT} vertices, got {n}")
    if not nx.is_connected(gr) or not nx.is_bipartite(gr):
        raise GraphError("graph must be connected and bipartite")
    if not nx.check_planarity(gr)[0]:
        raise GraphError("graph is not planar")
    if max(d for _, d in gr.degree) > 3:
        raise GraphError("maximum degree is 3")
    colour = nx.bipartite.color(gr)
    order = list(nx.bfs_tree(gr, sorted(gr.nodes, key=str)[0]))
    side = 2 if n <= 4 else 3
    slots = [(i * spacing, j * spacing) for j in range(side) for i in range(side)]
    box = (-1, side * spacing - spacing + 1)
    pos: dict = {}
    routes: dict = {}
    used: set = set()
    nodes = 0

    def route(a, b):
        start, goal = pos[a], pos[b]
        prev = {start: None}
        frontier = [start]
        while frontier:
            nxt = []
            for q in frontier:
                for r in _neighbors(q):
                    if r in prev or not (box[0] <= r[0] <= box[1] and box[0] <= r[1] <= box[1]):
                        continue
                    if r == goal:
                        prev[r] = q
                        path = [r]
                        while prev[path[-1]] is not None:
                            path.append(prev[path[-1]])
                        return path[::-1]
                    if r in used:
                        continue
                    prev[r] = q
                    nxt.append(r)
            frontier = nxt
        return None

    def place(k):
        nonlocal nodes
        if k == len(order):
            return True
        v = order[k]
        for slot in slots:
            if slot in used:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise TooLarge("naive embedding search exhausted its budget")
            pos[v] = slot
            used.add(slot)
            drawn = []
            ok = True
            for w in sorted((w for w in gr[v] if w in pos and w != v), key=str):
                path = route(v, w)
                if path is None:
                    ok = False
                    break
                routes[frozenset((v, w))] = path
                drawn.append(frozenset((v, w)))
                used.update(path[1:-1])
            if ok and place(k + 1):
                return True
            for key in drawn:
                used.difference_update(routes.pop(key)[1:-1])
            used.discard(slot)
            del pos[v]
        return False

    if not place(0):
        raise GraphError("naive embedder found no orthogonal drawing")
    data = {
        "vertices": [{"id": str(v), "x": pos[v][0], "y": pos[v][1], "part": colour[v]}
                     for v in order],
        "edges": [], "requiredEdge": None,
    }
    req = frozenset(required)
    for key, path in sorted(routes.items(), key=lambda kv: sorted(map(str, kv[0]))):
        u = next(x for x in key if pos[x] == path[0])
        v = next(x for x in key if x != u)
        eid = f"{u}-{v}"
        if key == req:
            data["requiredEdge"] = eid
        data["edges"].append({"id": eid, "u": str(u), "v": str(v), "path": [list(q) for q in path]})
    if data["requiredEdge"] is None:
        raise GraphError(f"required edge {required} is not an edge")
    return PlanarCubicGraph.from_json(data, cubic=all(d == 3 for _, d in gr.degree))
