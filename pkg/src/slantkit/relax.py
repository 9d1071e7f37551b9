"""Integer-program and matroid formulations of Slant, and the two polynomial
special cases they yield.

Variable ``s[c] = 1`` means cell ``c`` takes its even diagonal (endpoints with
even coordinate sums).  A clue ``k`` at an even vertex asks for ``k`` selected
incident cells; at an odd vertex with ``d`` incident cells it asks for ``d - k``.

Acyclicity is handled through the even lattice graph augmented with one root
vertex joined to every boundary vertex.  Cells are its ordinary edges, the
root edges are free extras.  A complete assignment is cycle-free exactly when
its even edges plus some root edges form a spanning tree of that augmented
graph: even acyclicity is the forest part, and odd acyclicity is equivalent
to every even component reaching the boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

import networkx as nx

from .board import Assignment, Board, Cell, Vertex, even_diagonal, other
from .matroid import GraphicMatroid, PartitionMatroid, matroid_intersection_max_weight
from .result import SolveResult, Status
from .validity import check_solution

# lattice class letters, keyed by (x mod 2, y mod 2)
CLASS_LETTER = {(0, 0): "A", (1, 1): "B", (0, 1): "C", (1, 0): "D"}


class ClassViolation(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    pass


def vertex_class(v: Vertex) -> tuple[int, int]:
    return v[0] % 2, v[1] % 2


def _cell_index(cell: Cell, cols: int) -> int:
    return cell[1] * cols + cell[0]


def clue_target(b: Board, v: Vertex) -> int:
    """Required number of selected (even-diagonal) cells around clue vertex ``v``."""
    k = b.clues[v]
    if (v[0] + v[1]) % 2 == 0:
        return k
    return len(b.incident_cells(v)) - k


@dataclass
class RelaxModel:
    rows: int
    cols: int
    equalities: list[tuple[tuple[Cell, ...], int]]
    weights: list[int]
    target_weight: int
    even_vertex_count: int
    vertex_count: int  # augmented graph: even lattice points plus the root
    threshold: int

    @property
    def tree_edge_count(self) -> int:
        return self.vertex_count - 1

    def to_json(self) -> dict[str, Any]:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "variables": [[x, y] for y in range(self.rows) for x in range(self.cols)],
            "equalities": [{"cells": [list(c) for c in cells], "target": t}
                           for cells, t in self.equalities],
            "weights": self.weights,
            "N": self.target_weight,
            "even_vertex_count": self.even_vertex_count,
            "augmented_vertex_count": self.vertex_count,
            "threshold": self.threshold,
        }


def _lattice_graph(rows: int, cols: int, parity: int):
    """Parity lattice graph with root: (n_vertices, cell edges, root edges)."""
    ids: dict[Vertex, int] = {}
    for y in range(rows + 1):
        for x in range(cols + 1):
            if (x + y) % 2 == parity:
                ids[(x, y)] = len(ids)
    root = len(ids)
    cell_edges = []
    for y in range(rows):
        for x in range(cols):
            if (x + y) % 2 == parity:
                u, v = (x, y), (x + 1, y + 1)
            else:
                u, v = (x + 1, y), (x, y + 1)
            cell_edges.append((ids[u], ids[v]))
    root_edges = [(root, i) for (x, y), i in ids.items()
                  if x in (0, cols) or y in (0, rows)]
    return len(ids) + 1, cell_edges, root_edges


def build_ilp_model(b: Board) -> RelaxModel:
    n_cells = b.rows * b.cols
    equalities = []
    weights = [0] * n_cells
    for v in sorted(b.clues, key=lambda v: (v[1], v[0])):
        cells = tuple(b.incident_cells(v))
        equalities.append((cells, clue_target(b, v)))
        for c in cells:
            weights[_cell_index(c, b.cols)] += 1
    n_vertices, _, _ = _lattice_graph(b.rows, b.cols, 0)
    target = sum(t for _, t in equalities)
    return RelaxModel(b.rows, b.cols, equalities, weights, target,
                      n_vertices - 1, n_vertices, target + n_vertices - 1)


def reconstruct(b: Board, selected: Iterable[int], parity: int = 0) -> Assignment:
    """Assignment taking the parity-``parity`` diagonal exactly on ``selected`` cells."""
    chosen = set(selected)
    out = Assignment.empty_for(b)
    for i in range(b.rows * b.cols):
        cell = (i % b.cols, i // b.cols)
        d = even_diagonal(cell) if parity == 0 else other(even_diagonal(cell))
        out[cell] = d if i in chosen else other(d)
    return out


# -- five matroids -------------------------------------------------------------

@dataclass
class FiveMatroidModel:
    """Four clue partition matroids plus the augmented even-graph matroid.

    Ground set: cells ``0..n_cells-1`` followed by one root edge per even
    boundary vertex.
    """

    board: Board
    n_cells: int
    partitions: dict[str, PartitionMatroid]
    graphic: GraphicMatroid
    weights: list[int]
    target_weight: int
    vertex_count: int
    threshold: int
    feasible_targets: bool
    root_edges: list[int] = field(default_factory=list)

    def weight(self, s: Iterable[int]) -> int:
        return sum(self.weights[e] for e in s)

    def best_weight_with_cells(self, cells: Iterable[int]) -> int | None:
        """Max weight of ``cells`` plus root edges independent in all five.

        None when ``cells`` alone is dependent in some matroid.
        """
        cells = list(cells)
        if not all(m.is_independent(cells) for m in self.partitions.values()):
            return None
        if not self.graphic.is_independent(cells):
            return None
        extra = self.graphic.rank(cells + self.root_edges) - len(cells)
        return self.weight(cells) + extra

    def accepts(self, cells: Iterable[int]) -> bool:
        if not self.feasible_targets:
            return False
        return self.best_weight_with_cells(cells) == self.threshold

    def to_json(self) -> dict[str, Any]:
        return {
            "n_cells": self.n_cells,
            "root_edges": self.root_edges,
            "partition_matroids": {
                name: {"blocks": [{"vertex": list(v), "elements": els, "cap": m.caps[v]}
                                  for v, els in m.blocks.items()]}
                for name, m in self.partitions.items()},
            "graphic_matroid": {"n_vertices": self.graphic.n_vertices,
                                "edges": [list(e) for e in self.graphic.edges]},
            "weights": self.weights,
            "N": self.target_weight,
            "augmented_vertex_count": self.vertex_count,
            "threshold": self.threshold,
            "feasible_targets": self.feasible_targets,
        }


def build_five_matroid_model(b: Board) -> FiveMatroidModel:
    n_cells = b.rows * b.cols
    n_vertices, cell_edges, root_edges = _lattice_graph(b.rows, b.cols, 0)
    ground = len(cell_edges) + len(root_edges)
    block_of: dict[str, dict[int, Vertex]] = {k: {} for k in "ABCD"}
    caps: dict[str, dict[Vertex, int]] = {k: {} for k in "ABCD"}
    weights = [1] * ground
    feasible = True
    target = 0
    for v in sorted(b.clues, key=lambda v: (v[1], v[0])):
        letter = CLASS_LETTER[vertex_class(v)]
        cells = b.incident_cells(v)
        t = clue_target(b, v)
        if not 0 <= t <= len(cells):
            feasible = False
        caps[letter][v] = max(t, 0)
        target += t
        for c in cells:
            i = _cell_index(c, b.cols)
            block_of[letter][i] = v
            weights[i] += 1
    partitions = {k: PartitionMatroid(ground, block_of[k], caps[k]) for k in "ABCD"}
    graphic = GraphicMatroid(n_vertices, cell_edges + root_edges)
    return FiveMatroidModel(b, n_cells, partitions, graphic, weights, target, n_vertices,
                            target + n_vertices - 1, feasible,
                            list(range(n_cells, ground)))


# -- single parity class, with the cycle constraint --------------------------------

def _single_class(b: Board) -> tuple[int, int] | None:
    classes = {vertex_class(v) for v in b.clues}
    if len(classes) > 1:
        raise ClassViolation(f"clues span lattice classes {sorted(classes)}")
    return next(iter(classes), None)


def solve_single_class_with_cycle(b: Board) -> SolveResult:
    """Exact solver for boards whose clues all share one ``(x mod 2, y mod 2)``.

    Clue vertices of an odd-sum class live in the odd lattice graph; the same
    construction then runs on that graph with the roles of the diagonals
    swapped.
    """
    cls = _single_class(b)
    parity = 0 if cls is None else (cls[0] + cls[1]) % 2
    n_cells = b.rows * b.cols
    n_vertices, cell_edges, root_edges = _lattice_graph(b.rows, b.cols, parity)
    ground = n_cells + len(root_edges)
    block_of, caps = {}, {}
    weights = [1] * ground
    target = 0
    for v, k in b.clues.items():
        caps[v] = k
        target += k
        for c in b.incident_cells(v):
            i = _cell_index(c, b.cols)
            block_of[i] = v
            weights[i] += 1
    clue_matroid = PartitionMatroid(ground, block_of, caps)
    tree_matroid = GraphicMatroid(n_vertices, cell_edges + root_edges)
    chosen, weight = matroid_intersection_max_weight(clue_matroid, tree_matroid, weights)
    threshold = target + n_vertices - 1
    stats = {"weight": weight, "threshold": threshold, "parity": parity}
    if weight != threshold:
        return SolveResult(Status.UNSOLVABLE, stats=stats)
    witness = reconstruct(b, (e for e in chosen if e < n_cells), parity)
    bad = check_solution(b, witness)
    if bad:
        raise InternalInconsistency(f"weight test accepted but witness fails: {bad[0]}")
    return SolveResult(Status.SOLVABLE, witness=witness, stats=stats)


# -- two parity classes, vertex constraints only -----------------------------------

def solve_two_class_vertex_only(b: Board) -> SolveResult:
    """Meet every clue, ignoring cycles, when clues use at most two classes.

    Each cell has exactly one corner in every class, so a cell couples at most
    one clue from each side; exact degrees become a saturating max flow.
    """
    classes = sorted({vertex_class(v) for v in b.clues})
    if len(classes) > 2:
        raise ClassViolation(f"clues span lattice classes {classes}")
    left_cls = classes[0] if classes else None
    targets = {}
    for v in b.clues:
        t = clue_target(b, v)
        if not 0 <= t <= len(b.incident_cells(v)):
            return SolveResult(Status.UNSOLVABLE, stats={"reason": f"clue at {v} out of range"})
        targets[v] = t

    g = nx.DiGraph()
    src, sink, slack_l, slack_r = "source", "sink", "slack_left", "slack_right"
    left_total = sum(t for v, t in targets.items() if vertex_class(v) == left_cls)
    right_total = sum(targets.values()) - left_total
    g.add_edge(src, slack_l, capacity=right_total)
    g.add_edge(slack_r, sink, capacity=left_total)
    g.add_edge(slack_l, slack_r, capacity=left_total + right_total)
    for v, t in targets.items():
        if vertex_class(v) == left_cls:
            g.add_edge(src, ("clue", v), capacity=t)
        else:
            g.add_edge(("clue", v), sink, capacity=t)
    coupled: dict[Cell, list[Vertex]] = {}
    for v in b.clues:
        for c in b.incident_cells(v):
            coupled.setdefault(c, []).append(v)
    for c, vs in coupled.items():
        left = [v for v in vs if vertex_class(v) == left_cls]
        right = [v for v in vs if vertex_class(v) != left_cls]
        tail = ("clue", left[0]) if left else slack_l
        head = ("clue", right[0]) if right else slack_r
        g.add_edge(tail, ("cell", c), capacity=1)
        g.add_edge(("cell", c), head, capacity=1)
    value, flow = nx.maximum_flow(g, src, sink)
    stats = {"flow": value, "required": left_total + right_total}
    if value != left_total + right_total:
        return SolveResult(Status.UNSOLVABLE, stats=stats)
    selected = [_cell_index(c, b.cols) for c in coupled
                if flow[("cell", c)] and sum(flow[("cell", c)].values()) == 1]
    witness = reconstruct(b, selected)
    # cells away from every clue are unconstrained here; reconstruct gives them
    # the odd diagonal, which is as arbitrary as any other choice
    return SolveResult(Status.SOLVABLE, witness=witness, stats=stats)


def vertex_constraints_met(b: Board, a: Assignment) -> bool:
    from .validity import incident_count
    return all(incident_count(a, v) == k for v, k in b.clues.items())


def dump_models(b: Board) -> str:
    return json.dumps({"ilp": build_ilp_model(b).to_json(),
                       "five_matroid": build_five_matroid_model(b).to_json()}, indent=2)
