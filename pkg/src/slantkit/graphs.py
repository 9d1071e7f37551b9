"""Small embedded test graphs for the reduction.

Coordinates are on the integer lattice; ``_line`` expands corner points into
unit-step paths.
"""

from __future__ import annotations

from .reduction import GridGraphInstance, PlanarCubicGraph, remove_edge


def _line(*corners):
    out = [corners[0]]
    for b in corners[1:]:
        a = out[-1]
        while a != b:
            a = (a[0] + (b[0] > a[0]) - (b[0] < a[0]), a[1] + (b[1] > a[1]) - (b[1] < a[1]))
            out.append(a)
    return [list(p) for p in out]


def _build(vertices, edges, required, cubic=True) -> PlanarCubicGraph:
    data = {"vertices": [{"id": k, "x": x, "y": y, "part": part}
                         for k, (x, y, part) in vertices.items()],
            "edges": [{"id": u + v, "u": u, "v": v, "path": path} for (u, v), path in edges.items()],
            "requiredEdge": required}
    return PlanarCubicGraph.from_json(data, cubic=cubic)


def cube(required: str = "ab") -> PlanarCubicGraph:
    """The 3-cube Q3, drawn as two nested squares; edge ids are endpoint pairs like ``"ab"``."""
    vs = dict(a=(2, 0, 0), b=(4, 0, 1), c=(6, 4, 0), d=(2, 6, 1),
              e=(2, 2, 1), f=(4, 2, 0), g=(4, 4, 1), h=(2, 4, 0))
    es = {("a", "b"): _line((2, 0), (4, 0)), ("a", "e"): _line((2, 0), (2, 2)),
          ("a", "d"): _line((2, 0), (0, 0), (0, 6), (2, 6)), ("b", "f"): _line((4, 0), (4, 2)),
          ("b", "c"): _line((4, 0), (6, 0), (6, 4)), ("c", "g"): _line((6, 4), (4, 4)),
          ("c", "d"): _line((6, 4), (6, 6), (2, 6)), ("d", "h"): _line((2, 6), (2, 4)),
          ("e", "f"): _line((2, 2), (4, 2)), ("e", "h"): _line((2, 2), (2, 4)),
          ("f", "g"): _line((4, 2), (4, 4)), ("g", "h"): _line((4, 4), (2, 4))}
    return _build(vs, es, required)


CUBE_EDGES = ("ab", "ae", "ad", "bf", "bc", "cg", "cd", "dh", "ef", "eh", "fg", "gh")


def ladder(n: int, required: str = "t0b0") -> PlanarCubicGraph:
    """The 2 x n grid: rails ``t0..t(n-1)`` and ``b0..b(n-1)`` with rungs ``tibi``.

    A Hamiltonian cycle must use both end rungs and no middle rung, so a
    required middle rung gives a negative instance.
    """
    vs = {f"t{i}": (2 * i, 0, i % 2) for i in range(n)}
    vs.update({f"b{i}": (2 * i, 2, (i + 1) % 2) for i in range(n)})
    es = {}
    for i in range(n - 1):
        es[(f"t{i}", f"t{i + 1}")] = _line((2 * i, 0), (2 * i + 2, 0))
        es[(f"b{i}", f"b{i + 1}")] = _line((2 * i, 2), (2 * i + 2, 2))
    for i in range(n):
        es[(f"t{i}", f"b{i}")] = _line((2 * i, 0), (2 * i, 2))
    return _build(vs, es, required, cubic=False)


def k23(required: str = "xp") -> PlanarCubicGraph:
    """K_{2,3}: unbalanced sides, so no Hamiltonian cycle at all."""
    vs = dict(x=(2, 0, 0), y=(2, 4, 0), p=(0, 2, 1), q=(2, 2, 1), r=(4, 2, 1))
    es = {("x", "p"): _line((2, 0), (0, 0), (0, 2)), ("x", "q"): _line((2, 0), (2, 2)),
          ("x", "r"): _line((2, 0), (4, 0), (4, 2)), ("y", "p"): _line((2, 4), (0, 4), (0, 2)),
          ("y", "q"): _line((2, 4), (2, 2)), ("y", "r"): _line((2, 4), (4, 4), (4, 2))}
    return _build(vs, es, required, cubic=False)


def cube_mutant() -> PlanarCubicGraph:
    """Q3 with required edge ``ab`` minus edges ``ae`` and ``cg``: no such Hamiltonian cycle.

    Deleting a single edge of Q3 never destroys every Hamiltonian cycle
    through another edge, so the mutation removes two channels.
    """
    return remove_edge(remove_edge(cube("ab"), "ae"), "cg")


def straight_channel(length: int = 4) -> GridGraphInstance:
    """A bare width-2 channel with a degree-1 stub at each end.

    The stubs sit on the same rail when ``length`` is even and on opposite
    rails otherwise; either way the zig-zag is the only Hamiltonian path.
    """
    if length < 1:
        raise ValueError("length must be positive")
    pts = {(x, y) for x in range(length) for y in range(2)}
    start, end = (-1, 0), (length, length % 2)
    return GridGraphInstance(frozenset(pts | {start, end}),
                             {q: ("channel", "line") for q in pts}, (start, end))
