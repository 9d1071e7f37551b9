"""Timing and sweep helpers shared by the report command and the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from .board import Board
from .fpt import solve_fpt
from .solver import generate, solve_exact

FPT_SIDES = (100, 200, 400, 800, 1600)


@dataclass(frozen=True)
class Timing:
    side: int
    seconds: float
    status: str


def _time_call(fn, min_total: float = 0.02, rounds: int = 5) -> float:
    """Best per-call time over ``rounds``, each batching calls to last ``min_total``."""
    best = float("inf")
    for _ in range(rounds):
        calls, start = 0, time.perf_counter()
        while True:
            fn()
            calls += 1
            elapsed = time.perf_counter() - start
            if elapsed >= min_total:
                break
        best = min(best, elapsed / calls)
    return best


def fpt_board(side: int, k: int, seed: int) -> Board:
    """Square board with ``k`` random interior clues spaced apart."""
    rng = random.Random(seed * 100_003 + side)
    clues = {}
    while len(clues) < k:
        v = (rng.randrange(1, side), rng.randrange(1, side))
        if all(abs(v[0] - u[0]) + abs(v[1] - u[1]) > 4 for u in clues):
            clues[v] = rng.choice((1, 2, 3))
    return Board(side, side, clues)


def fpt_scaling(sides=FPT_SIDES, k: int = 2, seed: int = 0) -> tuple[list[Timing], float]:
    """Runtime of the sparse FPT solver per side, and the log-log slope in R + C."""
    rows = []
    for side in sides:
        b = fpt_board(side, k, seed)
        status = solve_fpt(b).status.value
        rows.append(Timing(side, _time_call(lambda: solve_fpt(b)), status))
    return rows, growth_exponent([2 * t.side for t in rows], [t.seconds for t in rows])


def growth_exponent(sizes, seconds) -> float:
    slope, _ = np.polyfit(np.log(sizes), np.log(seconds), 1)
    return float(slope)


def solver_sweep(sides=(4, 6, 8, 10, 12), density: float = 0.4, seeds=range(5),
                 max_nodes: int = 10**6) -> list[dict]:
    """Exact-solver effort on generated (hence solvable) square boards."""
    out = []
    for side in sides:
        for seed in seeds:
            b = generate(side, side, density, seed=seed)
            res = solve_exact(b, max_nodes=max_nodes)
            out.append({"side": side, "seed": seed, "clues": len(b.clues),
                        "status": res.status.value, "nodes": res.stats["nodes"],
                        "seconds": res.stats["seconds"]})
    return out
