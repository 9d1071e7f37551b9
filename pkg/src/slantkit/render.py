"""ASCII and SVG drawings of boards and assignments."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

from .board import EMPTY, Assignment, Board, diagonal_endpoints

EVEN_COLOUR = "#c0392b"
ODD_COLOUR = "#2471a3"


def render(b: Board, a: Assignment | None = None, format: str = "ascii") -> str:
    if a is not None and not a.matches(b):
        raise ValueError(f"assignment is {a.rows}x{a.cols}, board is {b.rows}x{b.cols}")
    if format == "ascii":
        return render_ascii(b, a)
    if format == "svg":
        return render_svg(b, a)
    raise ValueError(f"unknown format {format!r}")


def render_ascii(b: Board, a: Assignment | None = None) -> str:
    """Vertex rows show clues (``+`` when unclued); cell rows show the diagonals."""
    lines = []
    for y in range(b.rows + 1):
        lines.append(" ".join(str(b.clues[(x, y)]) if (x, y) in b.clues else "+"
                              for x in range(b.cols + 1)))
        if y < b.rows:
            row = [" "]
            for x in range(b.cols):
                ch = a[(x, y)] if a is not None else EMPTY
                row.append(" " if ch == EMPTY else ch)
                row.append(" ")
            lines.append("".join(row).rstrip())
    return "\n".join(lines) + "\n"


def _svg(tag: str, parent: ET.Element | None = None, **attrs) -> ET.Element:
    attrs = {k.rstrip("_").replace("_", "-"): str(v) for k, v in attrs.items()}
    return ET.SubElement(parent, tag, attrs) if parent is not None else ET.Element(tag, attrs)


def render_svg(b: Board, a: Assignment | None = None, unit: int = 32) -> str:
    """Board panel on the left, the two diagonal lattices turned by 45 degrees on the right.

    Even diagonals are red and odd ones blue in both panels; in the right
    panel each lattice becomes an ordinary square grid.
    """
    pad = unit
    w1, h1 = b.cols * unit, b.rows * unit
    # the rotated panel: (x, y) -> ((x + y), (y - x)) / sqrt(2), shifted into view
    r = unit / math.sqrt(2)
    span_u = (b.cols + b.rows) * r  # both width and height of the rotated panel
    w2 = span_u
    width = pad * 3 + w1 + w2
    height = pad * 2 + max(h1, span_u)
    root = _svg("svg", xmlns="http://www.w3.org/2000/svg", width=f"{width:.0f}",
                height=f"{height:.0f}", viewBox=f"0 0 {width:.0f} {height:.0f}")
    _svg("rect", root, x=0, y=0, width=f"{width:.0f}", height=f"{height:.0f}", fill="white")

    left = _svg("g", root, id="board", transform=f"translate({pad},{pad})")
    for x in range(b.cols + 1):
        _svg("line", left, x1=x * unit, y1=0, x2=x * unit, y2=h1, stroke="#bbbbbb", stroke_width=1)
    for y in range(b.rows + 1):
        _svg("line", left, x1=0, y1=y * unit, x2=w1, y2=y * unit, stroke="#bbbbbb", stroke_width=1)
    edges = []
    if a is not None:
        for cell, ch in a.filled():
            edges.append(diagonal_endpoints(cell, ch))
    for e in edges:
        (ux, uy), (vx, vy) = e.u, e.v
        colour = EVEN_COLOUR if e.parity == 0 else ODD_COLOUR
        _svg("line", left, x1=ux * unit, y1=uy * unit, x2=vx * unit, y2=vy * unit,
             stroke=colour, stroke_width=3, stroke_linecap="round")
    for (x, y), k in sorted(b.clues.items()):
        _svg("circle", left, cx=x * unit, cy=y * unit, r=unit * 0.3, fill="white", stroke="black")
        t = _svg("text", left, x=x * unit, y=y * unit + unit * 0.11, font_size=f"{unit * 0.35:.1f}",
                 text_anchor="middle", font_family="sans-serif")
        t.text = str(k)

    right = _svg("g", root, id="lattices", transform=f"translate({pad * 2 + w1},{pad})")

    def rot(v):
        x, y = v
        return (x + y) * r, (y - x) * r + b.cols * r

    for e in edges:
        (ux, uy), (vx, vy) = rot(e.u), rot(e.v)
        colour = EVEN_COLOUR if e.parity == 0 else ODD_COLOUR
        _svg("line", right, x1=f"{ux:.2f}", y1=f"{uy:.2f}", x2=f"{vx:.2f}", y2=f"{vy:.2f}",
             stroke=colour, stroke_width=3, stroke_linecap="round")
    for y in range(b.rows + 1):
        for x in range(b.cols + 1):
            cx, cy = rot((x, y))
            colour = EVEN_COLOUR if (x + y) % 2 == 0 else ODD_COLOUR
            _svg("circle", right, cx=f"{cx:.2f}", cy=f"{cy:.2f}", r=2.5, fill=colour)
    for (x, y), k in sorted(b.clues.items()):
        cx, cy = rot((x, y))
        t = _svg("text", right, x=f"{cx + 4:.2f}", y=f"{cy - 4:.2f}", font_size=f"{unit * 0.3:.1f}",
                 font_family="sans-serif")
        t.text = str(k)
    return ET.tostring(root, encoding="unicode") + "\n"
