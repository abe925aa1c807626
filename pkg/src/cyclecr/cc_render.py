#!/usr/bin/env python3

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

from cyclecr.cc_cycles import C_INF, Cycle, center, is_isotropic, is_line, radius_squared
from cyclecr.cc_exceptions import InvalidConfigError
from cyclecr.cc_figures import ComplexCycle, CycleLike
from cyclecr.cc_numeric import format_number, proj_eq
from cyclecr.cc_settings.cc_settings import Cc_Settings

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">

<svg
    width="%(width)d"
    height="%(height)d"
    viewBox="0 0 %(width)d %(height)d"
    version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<rect x="0" y="0" width="%(width)d" height="%(height)d" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""


@dataclass(frozen=True)
class RenderConfig:
    # (xmin, xmax, ymin, ymax) in plane coordinates
    viewport: Tuple[float, float, float, float] = (-4.0, 4.0, -4.0, 4.0)
    # in plane units
    stroke_width: float = 0.02
    is_dashed_imaginary: bool = True
    output_path: Optional[str] = None
    width_px: int = 600
    point_radius_px: float = 3

    def __post_init__(self) -> None:
        if len(self.viewport) != 4:
            raise InvalidConfigError(f"viewport needs 4 numbers, got {self.viewport}")
        xmin, xmax, ymin, ymax = self.viewport
        if not (xmin < xmax and ymin < ymax):
            raise InvalidConfigError(f"viewport needs xmin<xmax and ymin<ymax, got {self.viewport}")
        if self.stroke_width <= 0 or self.width_px <= 0:
            raise InvalidConfigError("stroke width and image width must be positive")

    @classmethod
    def from_settings(
        cls, output_path: Optional[str] = None, viewport: Optional[Sequence[float]] = None
    ) -> "RenderConfig":
        return cls(
            viewport=tuple(float(v) for v in (viewport or Cc_Settings.value("Render/viewport"))),  # type:ignore
            stroke_width=float(Cc_Settings.value("Render/stroke-width")),
            is_dashed_imaginary=bool(Cc_Settings.value("Render/dashed-imaginary")),
            output_path=output_path,
            width_px=int(Cc_Settings.value("Render/width-px")),
            point_radius_px=float(Cc_Settings.value("Render/point-radius-px")),
        )

    @property
    def scale(self) -> float:
        xmin, xmax, _, _ = self.viewport
        return self.width_px / (xmax - xmin)

    @property
    def height_px(self) -> int:
        _, _, ymin, ymax = self.viewport
        return int(round(self.scale * (ymax - ymin)))


class Cc_SVG:
    COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2")
    NOTE_COLOR = "#666666"

    def __init__(self, config: RenderConfig) -> None:
        self.config = config
        self.commands: List[str] = []
        self.notes: List[str] = []

    def to_px(self, x: float, y: float) -> Tuple[float, float]:
        xmin, _, _, ymax = self.config.viewport
        return (x - xmin) * self.config.scale, (ymax - y) * self.config.scale

    @property
    def stroke_px(self) -> float:
        return self.config.stroke_width * self.config.scale

    def circle(self, x: float, y: float, radius: float, stroke: str, is_dashed: bool = False) -> None:
        cx, cy = self.to_px(x, y)
        r = radius * self.config.scale
        dash = f";stroke-dasharray:{4 * self.stroke_px:.4f},{4 * self.stroke_px:.4f}" if is_dashed else ""
        self.commands.append(
            f'<circle cx="{cx:.4f}" cy="{cy:.4f}" r="{r:.4f}"'
            f' style="fill:none;stroke:{stroke};stroke-width:{self.stroke_px:.4f}{dash}"/>'
        )

    def segment(self, p: Tuple[float, float], q: Tuple[float, float], stroke: str) -> None:
        (x1, y1), (x2, y2) = self.to_px(*p), self.to_px(*q)
        self.commands.append(
            f'<line x1="{x1:.4f}" y1="{y1:.4f}" x2="{x2:.4f}" y2="{y2:.4f}"'
            f' style="stroke:{stroke};stroke-width:{self.stroke_px:.4f}"/>'
        )

    def dot(self, x: float, y: float, fill: str) -> None:
        cx, cy = self.to_px(x, y)
        r = self.config.point_radius_px
        self.commands.append(f'<circle cx="{cx:.4f}" cy="{cy:.4f}" r="{r:.4f}" style="fill:{fill}"/>')

    def text(self, x: float, y: float, text: str, color: str) -> None:
        px, py = self.to_px(x, y)
        self.commands.append(
            f'<text x="{px + 4:.4f}" y="{py - 4:.4f}" fill="{color}" font-size="12"'
            f' font-family="monospace">{escape(text)}</text>'
        )

    def note(self, text: str) -> None:
        logging.debug(f"[Cc_SVG] {text}")
        self.notes.append(text)

    def clip_line(self, line: Cycle) -> Optional[Tuple[Tuple[float, float], Tuple[float, float]]]:
        """End points of l·x + n·y = m/2 inside the viewport, None when it misses."""
        xmin, xmax, ymin, ymax = self.config.viewport
        l, n, h = float(line.l), float(line.n), float(line.m) / 2  # noqa: E741
        slack = 1e-9 * max(xmax - xmin, ymax - ymin)
        candidates = []
        if n != 0:
            candidates += [(x, (h - l * x) / n) for x in (xmin, xmax)]
        if l != 0:
            candidates += [((h - n * y) / l, y) for y in (ymin, ymax)]
        inside = [
            (x, y)
            for x, y in candidates
            if xmin - slack <= x <= xmax + slack and ymin - slack <= y <= ymax + slack
        ]
        if len(inside) < 2:
            return None
        # order along the direction (-n, l) of the line
        inside.sort(key=lambda p: -n * p[0] + l * p[1])
        return inside[0], inside[-1]

    def draw_cycle(self, label: str, cycle: CycleLike, color: str) -> None:
        if isinstance(cycle, ComplexCycle):
            if not cycle.is_real():
                self.note(f"{label}: non-real point {cycle}")
                return
            cycle = cycle.to_cycle()

        if is_line(cycle):
            if proj_eq(cycle, C_INF):
                self.note(f"{label}: point at infinity")
                return
            ends = self.clip_line(cycle)
            if ends is None:
                self.note(f"{label}: line {cycle} outside the viewport")
                return
            self.segment(*ends, stroke=color)
            (x1, y1), (x2, y2) = ends
            self.text((x1 + x2) / 2, (y1 + y2) / 2, label, color)
            return

        c = center(cycle)
        x, y = float(c.x), float(c.y)
        if is_isotropic(cycle):
            self.dot(x, y, color)
            self.text(x, y, label, color)
            return

        r2 = float(radius_squared(cycle))
        if r2 > 0:
            self.circle(x, y, math.sqrt(r2), color)
            self.text(x + math.sqrt(r2 / 2), y + math.sqrt(r2 / 2), label, color)
            return

        ghost_radius = math.sqrt(-r2)
        where = f"({format_number(x)}, {format_number(y)})"
        self.note(f"{label}: imaginary radius {format_number(ghost_radius)}i at {where}")
        if self.config.is_dashed_imaginary:
            self.circle(x, y, ghost_radius, color, is_dashed=True)
            offset = ghost_radius / math.sqrt(2)
            self.text(x + offset, y + offset, f"{label} (imaginary)", color)

    def render(self) -> str:
        width, height = self.config.width_px, self.config.height_px
        lines = [PREAMBLE % {"width": width, "height": height}]
        lines.extend(command + "\n" for command in self.commands)
        for i, note in enumerate(self.notes, 1):
            lines.append(
                f'<text x="8" y="{14 * i}" fill="{self.NOTE_COLOR}" font-size="11"'
                f' font-family="monospace">{escape(note)}</text>\n'
            )
        lines.append(POSTAMBLE)
        return "".join(lines)

    def save(self, filename: str) -> None:
        with open(filename, "w", encoding="utf-8", newline="\n") as f:
            f.write(self.render())
        logging.info(f"[Cc_SVG] Figure saved to {filename}")


def render_cycles(labelled_cycles: Sequence[Tuple[str, CycleLike]], config: RenderConfig) -> str:
    """Draw the cycles in order, one colour each, and write the SVG when config has an output path."""
    svg = Cc_SVG(config)
    for i, (label, cycle) in enumerate(labelled_cycles):
        svg.draw_cycle(label, cycle, Cc_SVG.COLORS[i % len(Cc_SVG.COLORS)])
    if config.output_path is not None:
        svg.save(config.output_path)
    return svg.render()
