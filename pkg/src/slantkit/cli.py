"""Command-line front end: ``slant <subcommand> ...``.

Exit codes: 0 solvable/ok, 1 unsolvable/violation, 2 usage or I/O error,
3 budget overflow.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .board import Assignment, Board, ParseError, parse_assignment, parse_board, serialize_assignment, serialize_board
from .fpt import solve_fpt
from .greedy import PreconditionCyclic, extend, is_extremal, solve_zero_four
from .relax import ClassViolation, InternalInconsistency, solve_single_class_with_cycle, solve_two_class_vertex_only, vertex_class
from .result import BudgetExceeded, SolveResult, Status
from .solver import count_solutions, generate, solve_exact
from .validity import check_solution

OK, FAIL, USAGE, OVERFLOW = 0, 1, 2, 3
EXIT = {Status.SOLVABLE: OK, Status.UNSOLVABLE: FAIL, Status.OVERFLOW: OVERFLOW}
FPT_MAX_CLUES = 6


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _board(path: str) -> Board:
    return parse_board(_read(path))


def _assignment(path: str, b: Board) -> Assignment:
    return parse_assignment(_read(path), b.rows, b.cols)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif text:
        print(text, end="" if text.endswith("\n") else "\n")


# -- solve dispatch -------------------------------------------------------------------


def auto_mode(b: Board) -> str:
    """Cheapest exact method whose preconditions hold."""
    if not b.clues:
        return "extend"
    if all(is_extremal(b, v, k) for v, k in b.clues.items()):
        return "zero-four"
    if len(b.clues) <= FPT_MAX_CLUES:
        return "fpt"
    if len({vertex_class(v) for v in b.clues}) == 1:
        return "single-class"
    return "exact"


def solve(b: Board, mode: str = "auto", max_nodes: int = 10**7, seed: int | None = None) -> tuple[str, SolveResult]:
    if mode == "auto":
        mode = auto_mode(b)
    if mode == "extend":
        if b.clues:
            raise UsageError("mode extend needs a clue-free board")
        return mode, SolveResult(Status.SOLVABLE, witness=extend(Assignment.empty_for(b), seed=seed))
    if mode == "zero-four":
        return mode, solve_zero_four(b, seed=seed)
    if mode == "fpt":
        return mode, solve_fpt(b, materialize=True)
    if mode == "single-class":
        try:
            return mode, solve_single_class_with_cycle(b)
        except ClassViolation as exc:
            raise UsageError(str(exc)) from exc
        except InternalInconsistency:
            return "exact", solve_exact(b, max_nodes=max_nodes)
    if mode == "two-class-relax":
        try:
            return mode, solve_two_class_vertex_only(b)
        except ClassViolation as exc:
            raise UsageError(str(exc)) from exc
    if mode == "exact":
        return mode, solve_exact(b, max_nodes=max_nodes)
    raise UsageError(f"unknown mode {mode}")


# -- subcommands ------------------------------------------------------------------------


def cmd_check(args) -> int:
    b = _board(args.board)
    a = _assignment(args.assignment, b)
    if not a.is_complete():
        raise UsageError("assignment is incomplete")
    violations = check_solution(b, a)
    _emit(args, {"status": "ok" if not violations else "violation",
                 "violations": [str(v) for v in violations]},
          "\n".join(str(v) for v in violations) if violations else "ok")
    return FAIL if violations else OK


def cmd_solve(args) -> int:
    b = _board(args.board)
    mode, res = solve(b, args.mode, args.max_nodes, args.seed)
    if args.witness and res.witness is not None:
        _write(args.witness, serialize_assignment(res.witness))
    payload = res.to_json()
    payload["mode"] = mode
    payload["witnessPath"] = args.witness if res.witness is not None else None
    text = res.status.value + "\n"
    if res.witness is not None and not args.witness:
        text += serialize_assignment(res.witness)
    _emit(args, payload, text)
    return EXIT[res.status]


def cmd_extend(args) -> int:
    b = _board(args.board)
    a = _assignment(args.partial, b)
    try:
        full = extend(a, order="random" if args.seed is not None else "row", seed=args.seed)
    except PreconditionCyclic as exc:
        _emit(args, {"status": "violation", "error": str(exc)}, str(exc))
        return FAIL
    violations = check_solution(b, full)
    _emit(args, {"status": "ok", "assignment": full.to_rows(),
                 "clueViolations": [str(v) for v in violations]},
          serialize_assignment(full))
    return OK


def cmd_count(args) -> int:
    b = _board(args.board)
    try:
        n = count_solutions(b, cap=args.cap, max_nodes=args.max_nodes)
    except BudgetExceeded as exc:
        _emit(args, {"status": Status.OVERFLOW.value, "error": str(exc)}, str(exc))
        return OVERFLOW
    _emit(args, {"status": "ok", "count": n, "capped": n >= args.cap}, str(n))
    return OK if n else FAIL


def cmd_gen(args) -> int:
    if args.rows < 1 or args.cols < 1:
        raise UsageError("rows and cols must be positive")
    try:
        b = generate(args.rows, args.cols, args.density, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = serialize_board(b)
    if args.out:
        _write(args.out, text)
    _emit(args, {"status": "ok", "board": text, "out": args.out}, "" if args.out else text)
    return OK


def _load_graph(path: str):
    from .reduction import GraphError, PlanarCubicGraph, embed_naive

    data = json.loads(_read(path))
    if all("x" in v and "y" in v for v in data.get("vertices", [])) and \
            all("path" in e for e in data.get("edges", [])):
        try:
            return PlanarCubicGraph.from_json(data, cubic=True)
        except GraphError as exc:
            if "degree" not in str(exc):
                raise
        # degree-2 vertices are allowed too
        return PlanarCubicGraph.from_json(data, cubic=False)
    # no embedding supplied: tiny graphs only
    ends = {str(e["id"]): (str(e["u"]), str(e["v"])) for e in data["edges"]}
    req = ends.get(str(data["requiredEdge"]))
    if req is None:
        raise GraphError("requiredEdge names no edge")
    return embed_naive(ends.values(), req)


def cmd_reduce(args) -> int:
    from .reduction import GraphError, LayoutConflict, ScaleTooSmall, TooLarge, reduce, verify_forced_edges

    try:
        p = _load_graph(args.graph)
        r = reduce(p, scale=args.scale, margin=args.margin)
    except (GraphError, ScaleTooSmall, LayoutConflict, TooLarge, json.JSONDecodeError) as exc:
        raise UsageError(f"reduction failed: {exc}") from exc
    text = serialize_board(r.board)
    sidecar = r.to_json()
    sidecar["scale"] = r.grid.scale if r.grid is not None else None
    payload = {"status": "ok", "rows": r.board.rows, "cols": r.board.cols,
               "clues": len(r.board.clues), "faceGadgets": len(r.faceGadgets), "out": args.out}
    code = OK
    if args.verify:
        report = verify_forced_edges(r)
        payload["verify"] = str(report)
        code = OK if report else FAIL
    if args.out:
        _write(args.out, text)
        side = args.sidecar or args.out + ".json"
        _write(side, json.dumps(sidecar))
        payload["sidecar"] = side
        msg = f"wrote {args.out} ({r.board.rows}x{r.board.cols}, {len(r.board.clues)} clues) and {side}"
        if args.verify:
            msg += f"\nforced edges: {payload['verify']}"
        _emit(args, payload, msg)
    else:
        _emit(args, payload, text)
    return code


def cmd_render(args) -> int:
    from .render import render

    b = _board(args.board)
    a = _assignment(args.assignment, b) if args.assignment else None
    if args.svg:
        _write(args.svg, render(b, a, "svg"))
    text = render(b, a, "ascii")
    _emit(args, {"status": "ok", "ascii": text, "svg": args.svg}, text)
    return OK


def cmd_report(args) -> int:
    """Benchmarks as delimited tables plus matplotlib figures in ``--out``."""
    from .bench import fpt_scaling, solver_sweep
    from .plotting import plot_board, plot_fpt_scaling, plot_solver_nodes

    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create {out}: {exc.strerror}") from exc
    timings, exponent = fpt_scaling()
    sides = (4, 6, 8) if args.quick else (4, 6, 8, 10, 12)
    sweep = solver_sweep(sides=sides, seeds=range(3 if args.quick else 5))

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["table", "side", "seed", "clues", "status", "nodes", "seconds"])
    for t in timings:
        w.writerow(["fpt", t.side, "", 2, t.status, "", f"{t.seconds:.3e}"])
    for row in sweep:
        w.writerow(["exact", row["side"], row["seed"], row["clues"], row["status"],
                    row["nodes"], f"{row['seconds']:.3e}"])
    table = buf.getvalue()
    _write(str(out / "report.csv"), table)

    b = generate(8, 8, 0.4, seed=args.seed)
    _, res = solve(b)
    figures = [plot_fpt_scaling(timings, exponent, out / "fpt_scaling.png"),
               plot_solver_nodes(sweep, out / "solver_nodes.png"),
               plot_board(b, res.witness, out / "board.png")]
    payload = {"status": "ok", "fptExponent": exponent, "csv": str(out / "report.csv"),
               "figures": [str(f) for f in figures]}
    _emit(args, payload, table + f"# fpt growth exponent {exponent:.3f}\n"
          + "".join(f"# figure {f}\n" for f in figures))
    return OK


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slant", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("check", parents=[common], help="verify a complete assignment")
    p.add_argument("board")
    p.add_argument("assignment")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common], help="decide a board and print a witness")
    p.add_argument("board")
    p.add_argument("--mode", default="auto",
                   choices=["auto", "fpt", "zero-four", "single-class", "two-class-relax", "exact", "extend"])
    p.add_argument("--witness", help="write the witness assignment here")
    p.add_argument("--max-nodes", type=int, default=10**7)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("extend", parents=[common], help="complete an acyclic partial assignment")
    p.add_argument("board")
    p.add_argument("partial")
    p.add_argument("--seed", type=int, help="randomise the cell order")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("count", parents=[common], help="count solutions up to a cap")
    p.add_argument("board")
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--max-nodes", type=int, default=10**7)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("gen", parents=[common], help="generate a solvable board")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", parents=[common], help="compile a Hamiltonian-cycle instance to a board")
    p.add_argument("--graph", required=True, help="graph JSON")
    p.add_argument("--out", help="board file; the provenance sidecar goes next to it")
    p.add_argument("--sidecar")
    p.add_argument("--scale", type=int)
    p.add_argument("--margin", type=int, default=2)
    p.add_argument("--verify", action="store_true", help="check the forced backbone by propagation")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("render", parents=[common], help="draw a board as ASCII, optionally SVG")
    p.add_argument("board")
    p.add_argument("assignment", nargs="?")
    p.add_argument("--svg", help="also write an SVG drawing here")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("report", parents=[common], help="benchmark tables and figures")
    p.add_argument("--out", default="report")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_report)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"slant: error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
