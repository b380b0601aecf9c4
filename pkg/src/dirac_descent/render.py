"""Colour-grid pictures of adapted gamma sets.

Each matrix entry in ``{0, +1, -1, +i, -i}`` becomes one cell.  The gamma
matrices are drawn inside a box and, for even sets, the chiral matrix is
drawn outside it.  Two outputs: plain text (one character per cell) and
SVG 1.1.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .clifford import GammaSet, chiral
from .exact import ExactMatrix

__all__ = ["RenderError", "DEFAULT_PALETTE", "TEXT_GLYPHS", "render_grid", "parse_text_grid"]

# keyed by quarter phase, None for zero
DEFAULT_PALETTE = {None: "white", 0: "black", 2: "red", 1: "blue", 3: "yellow"}
TEXT_GLYPHS = {None: ".", 0: "+", 2: "-", 1: "i", 3: "j"}
_GLYPH_PHASE = {g: p for p, g in TEXT_GLYPHS.items()}
_PHASE_PARTS = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}


class RenderError(ValueError):
    pass


def _cells(m: ExactMatrix) -> list[list[int | None]]:
    if not m.entries_are_quarter_phases():
        raise RenderError("entries must lie in {0, +-1, +-i}")
    return [[x.quarter_phase() if x else None for x in row] for row in m.rows()]


def _panels(s: GammaSet) -> tuple[list[tuple[str, ExactMatrix]], tuple[str, ExactMatrix] | None]:
    inside = [(f"gamma^{mu}", m) for mu, m in enumerate(s)]
    outside = ("chiral", chiral(s)) if s.is_even else None
    return inside, outside


def _text(s: GammaSet) -> str:
    inside, outside = _panels(s)
    lines = [f"# {s.label or 'gamma set'}  d={s.dim}  N={s.order}"]
    for name, m in inside:
        lines.append(f"[{name}]")
        lines.extend(" ".join(TEXT_GLYPHS[c] for c in row) for row in _cells(m))
    if outside is not None:
        lines.append(f"({outside[0]})")
        lines.extend(" ".join(TEXT_GLYPHS[c] for c in row) for row in _cells(outside[1]))
    return "\n".join(lines) + "\n"


def _svg(s: GammaSet, palette: dict, cell: int) -> str:
    inside, outside = _panels(s)
    n = s.order
    gap, pad = cell, cell // 2 + 2
    grid = n * cell
    box_w = len(inside) * grid + (len(inside) - 1) * gap + 2 * pad
    width = box_w + (gap + grid if outside else 0) + 2
    height = grid + 2 * pad + 2

    def panel(name, m, x0, y0):
        out = [f'<g class="grid" data-name="{escape(name)}" transform="translate({x0},{y0})">']
        for i, row in enumerate(_cells(m)):
            for j, c in enumerate(row):
                out.append(
                    f'<rect x="{j * cell}" y="{i * cell}" width="{cell}" height="{cell}" '
                    f'fill="{escape(palette[c])}" stroke="gray" stroke-width="0.5"/>'
                )
        out.append("</g>")
        return out

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">',
        f"<title>{escape(s.label or 'gamma set')}</title>",
        f'<rect class="box" x="1" y="1" width="{box_w}" height="{grid + 2 * pad}" fill="none" stroke="black"/>',
    ]
    for k, (name, m) in enumerate(inside):
        parts += panel(name, m, 1 + pad + k * (grid + gap), 1 + pad)
    if outside is not None:
        parts += panel(outside[0], outside[1], 1 + box_w + gap, 1 + pad)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_grid(s: GammaSet, format: str = "text", palette: dict | None = None, cell_size: int = 16) -> str:
    """Render ``s`` as a text grid or an SVG document."""
    if format == "text":
        return _text(s)
    if format == "svg":
        if cell_size < 1:
            raise RenderError(f"cell size must be positive, got {cell_size}")
        pal = dict(DEFAULT_PALETTE)
        pal.update(palette or {})
        return _svg(s, pal, cell_size)
    raise RenderError(f"unknown format {format!r}")


def parse_text_grid(text: str) -> tuple[GammaSet, ExactMatrix | None]:
    """Inverse of the text renderer: returns the gamma set and the chiral matrix (if drawn)."""
    label = ""
    panels: list[tuple[str, list[list[int | None]]]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            label = line[1:].split("  ")[0].strip()
        elif line.startswith("[") or line.startswith("("):
            panels.append((line.strip("[]()"), []))
        else:
            if not panels:
                raise RenderError("grid row before any panel header")
            try:
                panels[-1][1].append([_GLYPH_PHASE[g] for g in line.split()])
            except KeyError as exc:
                raise RenderError(f"unknown glyph {exc.args[0]!r}") from None

    def to_matrix(rows):
        re = [[_PHASE_PARTS[c][0] if c is not None else 0 for c in row] for row in rows]
        im = [[_PHASE_PARTS[c][1] if c is not None else 0 for c in row] for row in rows]
        return ExactMatrix(re, im)

    gammas = [to_matrix(rows) for name, rows in panels if name.startswith("gamma^")]
    chi = [to_matrix(rows) for name, rows in panels if name == "chiral"]
    return GammaSet(len(gammas), tuple(gammas), label), (chi[0] if chi else None)
