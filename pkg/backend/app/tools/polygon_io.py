"""
Polygon Files
=============
Plain-text polygon format: a vertex count, then one "x y" line per vertex.
Scalars are integers, "p/q" ratios or finite decimals. Lines starting with
"#" are comments, except witness annotations:

    # int-witness x1 y1 x2 y2
    # ext-witness x1 y1 x2 y2
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from app.errors import ParseError
from app.geometry.exact import Point, scalar
from app.geometry.polygon import SimplePolygon, validate

WITNESS_TAGS = ("int-witness", "ext-witness")


@dataclass(frozen=True)
class PolygonDocument:
    polygon: SimplePolygon
    witnesses: Dict[str, Tuple[Point, Point]] = field(default_factory=dict)


def _scalars(tokens: List[str], line: int):
    try:
        return [scalar(t) for t in tokens]
    except ValueError as e:
        raise ParseError(line, str(e)) from None


def _witness(tokens: List[str], line: int) -> Tuple[str, Tuple[Point, Point]]:
    tag = tokens[0]
    if len(tokens) != 5:
        raise ParseError(line, f"{tag} needs 4 coordinates, got {len(tokens) - 1}")
    x1, y1, x2, y2 = _scalars(tokens[1:], line)
    return tag, (Point(x1, y1), Point(x2, y2))


def parse_polygon_document(text: str) -> PolygonDocument:
    """Parse and validate a polygon file together with its witness annotations."""
    count: Optional[int] = None
    count_line = 0
    vertices: List[Point] = []
    witnesses: Dict[str, Tuple[Point, Point]] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            tokens = stripped[1:].split()
            if tokens and tokens[0] in WITNESS_TAGS:
                tag, pair = _witness(tokens, number)
                if tag in witnesses:
                    raise ParseError(number, f"duplicate {tag}")
                witnesses[tag] = pair
            continue

        tokens = stripped.split()
        if count is None:
            if len(tokens) != 1 or not tokens[0].isdigit():
                raise ParseError(number, f"expected a vertex count, got {stripped!r}")
            count, count_line = int(tokens[0]), number
            continue
        if len(tokens) != 2:
            raise ParseError(number, f"expected 'x y', got {stripped!r}")
        if len(vertices) == count:
            raise ParseError(number, f"more than the declared {count} vertices")
        x, y = _scalars(tokens, number)
        vertices.append(Point(x, y))

    if count is None:
        raise ParseError(1, "empty polygon file")
    if len(vertices) != count:
        raise ParseError(count_line, f"declared {count} vertices, found {len(vertices)}")
    return PolygonDocument(validate(vertices), witnesses)


def parse_polygon_file(text: str) -> SimplePolygon:
    return parse_polygon_document(text).polygon


def read_polygon(path: str) -> PolygonDocument:
    with open(path, encoding="utf-8") as f:
        return parse_polygon_document(f.read())


def format_polygon(P: SimplePolygon, witnesses: Optional[Dict[str, Tuple[Point, Point]]] = None,
                   comment: Optional[str] = None) -> str:
    """Polygon file text; exact, so parsing it back yields the identical polygon."""
    lines = []
    if comment:
        lines.append(f"# {comment}")
    for tag in WITNESS_TAGS:
        if witnesses and tag in witnesses:
            a, b = witnesses[tag]
            lines.append(f"# {tag} {a} {b}")
    lines.append(str(P.n))
    lines.extend(str(p) for p in P.vertices)
    return "\n".join(lines) + "\n"
