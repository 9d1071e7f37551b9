"""Matplotlib figures for the report command."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .board import Assignment, Board, diagonal_endpoints  # noqa: E402
from .render import EVEN_COLOUR, ODD_COLOUR  # noqa: E402


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_fpt_scaling(timings, exponent: float, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    xs = [2 * t.side for t in timings]
    ys = [t.seconds * 1e6 for t in timings]
    ax.loglog(xs, ys, "o-", color="#34495e")
    ax.set_xlabel("R + C")
    ax.set_ylabel("time per solve (µs)")
    ax.set_title(f"FPT solver, k = 2 clues (slope {exponent:.2f})")
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, path)


def plot_solver_nodes(rows: list[dict], path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    sides = sorted({r["side"] for r in rows})
    data = [[max(r["nodes"], 1) for r in rows if r["side"] == s] for s in sides]
    ax.boxplot(data, tick_labels=[str(s) for s in sides])
    ax.set_yscale("log")
    ax.set_xlabel("board side")
    ax.set_ylabel("search nodes")
    ax.set_title("Exact solver on generated boards")
    return _save(fig, path)


def plot_board(b: Board, a: Assignment | None, path: str | Path) -> Path:
    size = max(3.0, min(10.0, 0.4 * max(b.rows, b.cols)))
    fig, ax = plt.subplots(figsize=(size, size * b.rows / b.cols))
    for x in range(b.cols + 1):
        ax.plot([x, x], [0, b.rows], color="#cccccc", lw=0.5)
    for y in range(b.rows + 1):
        ax.plot([0, b.cols], [y, y], color="#cccccc", lw=0.5)
    if a is not None:
        for cell, ch in a.filled():
            e = diagonal_endpoints(cell, ch)
            ax.plot([e.u[0], e.v[0]], [e.u[1], e.v[1]],
                    color=EVEN_COLOUR if e.parity == 0 else ODD_COLOUR, lw=1.5)
    for (x, y), k in b.clues.items():
        ax.text(x, y, str(k), ha="center", va="center", fontsize=7,
                bbox=dict(boxstyle="circle,pad=0.2", fc="white", ec="black", lw=0.5))
    ax.set_xlim(-0.5, b.cols + 0.5)
    ax.set_ylim(b.rows + 0.5, -0.5)
    ax.set_aspect("equal")
    ax.axis("off")
    return _save(fig, path)
