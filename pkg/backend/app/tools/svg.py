"""
SVG Scenes
==========
Static drawings of a polygon with labelled markers and polylines. Coordinates
are rounded to decimals for display only; the polygon file stays the source
of truth.
"""

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from app.config import SVG_DIGITS
from app.geometry.exact import Point, bounding_box
from app.geometry.polygon import SimplePolygon

MARGIN = Fraction(1, 10)
PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass(frozen=True)
class Marker:
    label: str
    point: Point


@dataclass(frozen=True)
class LabelledPolyline:
    label: str
    points: Tuple[Point, ...]


@dataclass(frozen=True)
class Scene:
    polygon: SimplePolygon
    markers: Tuple[Marker, ...] = ()
    polylines: Tuple[LabelledPolyline, ...] = ()

    def __post_init__(self):
        labels = [m.label for m in self.markers] + [p.label for p in self.polylines]
        if len(labels) != len(set(labels)):
            raise ValueError(f"scene labels must be unique: {labels}")

    def points(self) -> List[Point]:
        out = list(self.polygon.vertices)
        out.extend(m.point for m in self.markers)
        for line in self.polylines:
            out.extend(line.points)
        return out


def scene(polygon: SimplePolygon, markers: Sequence[Tuple[str, Point]] = (),
          polylines: Sequence[Tuple[str, Sequence[Point]]] = ()) -> Scene:
    return Scene(polygon,
                 tuple(Marker(label, p) for label, p in markers),
                 tuple(LabelledPolyline(label, tuple(pts)) for label, pts in polylines))


def decimal_text(value: Fraction, digits: Optional[int] = None) -> str:
    """Fixed-point text of value rounded to `digits` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits or SVG_DIGITS
        d = (Decimal(value.numerator) / Decimal(value.denominator)).normalize()
    text = format(d, "f")
    return "0" if text in ("-0", "0") else text


def _xy(p: Point) -> str:
    # SVG's y axis points down
    return f"{decimal_text(p.x)},{decimal_text(-p.y)}"


def emit_svg(s: Scene) -> str:
    """Deterministic SVG text for the scene."""
    x0, y0, x1, y1 = bounding_box(s.points())
    side = max(x1 - x0, y1 - y0) or Fraction(1)
    pad = side * MARGIN
    view = (x0 - pad, -y1 - pad, x1 - x0 + 2 * pad, y1 - y0 + 2 * pad)
    stroke = side / 200
    radius = side / 100

    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{" ".join(decimal_text(v) for v in view)}">',
    ]

    vs = s.polygon.vertices
    path = "M " + " L ".join(_xy(p) for p in vs) + " Z"
    out.append(f'  <path d="{path}" fill="#eeeeee" stroke="#000000" '
               f'stroke-width="{decimal_text(stroke)}"/>')

    for k, line in enumerate(s.polylines):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(_xy(p) for p in line.points)
        out.append(f'  <polyline data-label="{line.label}" points="{pts}" fill="none" '
                   f'stroke="{color}" stroke-width="{decimal_text(stroke * 2)}"/>')

    for m in s.markers:
        cx, cy = decimal_text(m.point.x), decimal_text(-m.point.y)
        out.append(f'  <circle data-label="{m.label}" cx="{cx}" cy="{cy}" '
                   f'r="{decimal_text(radius)}" fill="#000000"/>')
        out.append(f'  <text x="{cx}" y="{cy}" font-size="{decimal_text(radius * 4)}">{m.label}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
