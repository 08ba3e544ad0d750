"""Text, SVG and JSON views of a circuit."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .core import Circuit, CellKind, circuit_stats, classify_all, to_unicode

FORMATS = ("ascii", "svg", "json")
LEGEND_PX = 24


@dataclass(frozen=True)
class RenderOptions:
    format: str = "ascii"
    cell_px: int = 40
    highlight_straights: bool = True

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.cell_px < 8:
            raise ValueError("cell_px must be at least 8")


def render(circuit: Circuit, options: RenderOptions | None = None) -> str:
    options = options or RenderOptions()
    if options.format == "ascii":
        return ascii_art(circuit)
    if options.format == "svg":
        return svg(circuit, options.cell_px, options.highlight_straights)
    return to_json(circuit)


def ascii_art(circuit: Circuit) -> str:
    return to_unicode(circuit)


def _fmt(v: float) -> str:
    return f"{v:g}"


def svg_path(circuit: Circuit, cell_px: int = 40) -> str:
    """Path data: one segment per cell, from the entry edge midpoint to the exit edge midpoint.

    Straights are line segments across the cell, turns are quarter circles of
    radius ``cell_px / 2`` centred on the cell corner they bend around.
    """
    m = circuit.cols
    order = circuit.order().tolist()
    kinds = classify_all(circuit).reshape(-1)
    half = cell_px / 2
    r = _fmt(half)

    def centre(v):
        return (v % m) * cell_px + half, (v // m) * cell_px + half

    def midpoint(a, b):
        (xa, ya), (xb, yb) = centre(a), centre(b)
        return (xa + xb) / 2, (ya + yb) / 2

    size = len(order)
    x0, y0 = midpoint(order[-1], order[0])
    parts = [f"M {_fmt(x0)} {_fmt(y0)}"]
    for i, v in enumerate(order):
        x, y = midpoint(v, order[(i + 1) % size])
        kind = kinds[v]
        if kind >= CellKind.STRAIGHT_H:
            parts.append(f"L {_fmt(x)} {_fmt(y)}")
        else:
            # screen y points down, so a left (counter-clockwise) turn sweeps negatively
            sweep = 0 if kind == CellKind.TURN_CCW else 1
            parts.append(f"A {r} {r} 0 0 {sweep} {_fmt(x)} {_fmt(y)}")
    parts.append("Z")
    return " ".join(parts)


def svg(circuit: Circuit, cell_px: int = 40, highlight_straights: bool = True) -> str:
    n, m = circuit.dims
    stats = circuit_stats(circuit)
    width, height = m * cell_px, n * cell_px
    stroke = max(1, cell_px // 10)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height + LEGEND_PX}">',
        "<style>",
        f"  .board {{ fill: none; stroke: #cccccc; stroke-width: 1; }}",
        f"  .circuit {{ fill: none; stroke: #222222; stroke-width: {stroke}; }}",
        f"  .straight {{ stroke: #1f5fd6; stroke-width: {stroke + 1}; stroke-linecap: butt; }}",
        "  .legend { font-family: sans-serif; font-size: 14px; }",
        "</style>",
    ]
    for i in range(n + 1):
        lines.append(f'<line class="board" x1="0" y1="{i * cell_px}" x2="{width}" y2="{i * cell_px}"/>')
    for j in range(m + 1):
        lines.append(f'<line class="board" x1="{j * cell_px}" y1="0" x2="{j * cell_px}" y2="{height}"/>')
    lines.append(f'<path class="circuit" d="{svg_path(circuit, cell_px)}"/>')
    if highlight_straights:
        kinds = classify_all(circuit)
        half = cell_px / 2
        for r in range(n):
            for c in range(m):
                cx, cy = c * cell_px + half, r * cell_px + half
                if kinds[r, c] == CellKind.STRAIGHT_H:
                    x1, y1, x2, y2 = cx - half, cy, cx + half, cy
                elif kinds[r, c] == CellKind.STRAIGHT_V:
                    x1, y1, x2, y2 = cx, cy - half, cx, cy + half
                else:
                    continue
                lines.append(
                    f'<line class="straight" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
                )
    legend = f"straights: {stats.straights_total}, turns: {stats.turns_total}"
    lines.append(f'<text class="legend" x="4" y="{height + LEGEND_PX - 6}">{legend}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


_KIND_NAME = {
    CellKind.TURN_CCW: "turn-ccw",
    CellKind.TURN_CW: "turn-cw",
    CellKind.STRAIGHT_H: "straight-h",
    CellKind.STRAIGHT_V: "straight-v",
}


def to_dict(circuit: Circuit) -> dict:
    kinds = classify_all(circuit)
    return {
        "dims": {"rows": circuit.rows, "cols": circuit.cols},
        "tour": [[c.row, c.col] for c in circuit.tour()],
        "kinds": [[_KIND_NAME[CellKind(int(k))] for k in row] for row in kinds],
        "stats": circuit_stats(circuit).as_dict(),
    }


def to_json(circuit: Circuit) -> str:
    return json.dumps(to_dict(circuit), indent=2) + "\n"
