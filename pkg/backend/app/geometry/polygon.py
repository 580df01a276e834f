"""
Simple Polygon Model
====================
Validated simple closed n-gons, their cyclic combinatorics, generic
directions and verified rational push directions at vertices.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import List, Sequence, Tuple

from app.config import CACHE_SIZE, HALVING_CAP
from app.errors import (
    CollinearOverlap,
    DuplicateVertex,
    EdgeCrossing,
    HaltingCapExceeded,
    TooFewVertices,
)
from app.geometry.exact import (
    Point,
    RelationKind,
    Segment,
    Vector,
    bounding_box,
    orient,
    segment_relation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeBox:
    """Edge endpoints with a precomputed bounding box for fast rejection."""
    index: int
    segment: Segment
    min_x: Fraction
    min_y: Fraction
    max_x: Fraction
    max_y: Fraction


@dataclass(frozen=True, eq=True)
class SimplePolygon:
    """Cyclic vertex list p_0..p_{n-1}; edge i is [p_{i-1}, p_i]."""
    vertices: Tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Point:
        return self.vertices[i % self.n]

    def edge(self, i: int) -> Segment:
        return self.edges[i % self.n]

    def edge_endpoints(self, i: int) -> Tuple[int, int]:
        """Vertex indices (i-1, i) of edge i."""
        return (i - 1) % self.n, i % self.n

    @cached_property
    def edges(self) -> Tuple[Segment, ...]:
        return tuple(Segment(self.vertices[i - 1], self.vertices[i]) for i in range(self.n))

    @cached_property
    def edge_boxes(self) -> Tuple[EdgeBox, ...]:
        boxes = []
        for i, s in enumerate(self.edges):
            boxes.append(EdgeBox(i, s, min(s.a.x, s.b.x), min(s.a.y, s.b.y),
                                 max(s.a.x, s.b.x), max(s.a.y, s.b.y)))
        return tuple(boxes)

    @cached_property
    def vertex_index(self) -> dict:
        return {p: i for i, p in enumerate(self.vertices)}

    def adjacent(self, i: int, j: int) -> bool:
        return cyclic_edge_distance(self, i, j) == 1

    def __str__(self) -> str:
        return f"SimplePolygon(n={self.n})"


# =============================================================================
# VALIDATION
# =============================================================================

def validate(vertices: Sequence[Point]) -> SimplePolygon:
    """Return the polygon iff the vertex cycle is simple; otherwise raise the violation."""
    pts = tuple(vertices)
    n = len(pts)
    if n < 3:
        raise TooFewVertices(n)

    seen = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise DuplicateVertex(seen[p], i)
        seen[p] = i

    edges = [Segment(pts[i - 1], pts[i]) for i in range(n)]
    for i, j in combinations(range(n), 2):
        rel = segment_relation(edges[i], edges[j])
        adjacent = j == i + 1 or (i == 0 and j == n - 1)
        if rel.kind == RelationKind.OVERLAP:
            raise CollinearOverlap(i, j)
        if adjacent:
            # adjacent edges may only share their common vertex
            if rel.kind != RelationKind.TOUCH:
                raise EdgeCrossing(i, j)
            continue
        if rel.kind != RelationKind.DISJOINT:
            raise EdgeCrossing(i, j)
    return SimplePolygon(pts)


def polygon_from_pairs(pairs) -> SimplePolygon:
    """Convenience constructor: validate([(x, y), ...]) with scalar coercion."""
    return validate([Point(x, y) for x, y in pairs])


# =============================================================================
# SHAPE QUERIES
# =============================================================================

def signed_area2(P: SimplePolygon) -> Fraction:
    """Twice the signed area; positive for counterclockwise vertex order."""
    total = Fraction(0)
    for i in range(P.n):
        a, b = P.vertices[i - 1], P.vertices[i]
        total += a.x * b.y - a.y * b.x
    return total


def orientation(P: SimplePolygon) -> int:
    """+1 counterclockwise, -1 clockwise."""
    return 1 if signed_area2(P) > 0 else -1


def is_convex(P: SimplePolygon) -> bool:
    turns = {orient(P.vertex(i - 1), P.vertex(i), P.vertex(i + 1)) for i in range(P.n)}
    return turns == {1} or turns == {-1}


def has_parallel_edges(P: SimplePolygon) -> bool:
    return any(P.edges[i].direction.parallel_to(P.edges[j].direction)
               for i, j in combinations(range(P.n), 2))


def polygon_bounding_box(P: SimplePolygon):
    return bounding_box(P.vertices)


# =============================================================================
# GENERIC DIRECTION
# =============================================================================

def generic_direction(P: SimplePolygon) -> Vector:
    """First v = (1, k), k = 1, 2, ..., parallel to no line through two vertices."""
    diffs = [q - p for p, q in combinations(P.vertices, 2)]
    k = 1
    while True:
        v = Vector(1, k)
        if all(v.cross(w) != 0 for w in diffs):
            return v
        k += 1


def is_generic(P: SimplePolygon, v: Vector) -> bool:
    if v.is_zero():
        return False
    return all(v.cross(q - p) != 0 for p, q in combinations(P.vertices, 2))


# =============================================================================
# CYCLIC COMBINATORICS
# =============================================================================

def cyclic_edge_distance(P: SimplePolygon, i: int, j: int) -> int:
    d = abs(i - j) % P.n
    return min(d, P.n - d)


class ArcOrientation(str, Enum):
    CCW = "ccw"  # increasing indices
    CW = "cw"


@dataclass(frozen=True)
class BoundaryArc:
    start: int
    end: int
    orientation: ArcOrientation
    edge_count: int
    n: int

    def vertex_indices(self) -> List[int]:
        step = 1 if self.orientation == ArcOrientation.CCW else -1
        return [(self.start + step * k) % self.n for k in range(self.edge_count + 1)]


def shorter_arc(P: SimplePolygon, i: int, j: int) -> BoundaryArc:
    """Boundary arc i -> j with the fewest edges; ties go to increasing indices."""
    forward = (j - i) % P.n
    backward = (i - j) % P.n
    if forward <= backward:
        return BoundaryArc(i, j, ArcOrientation.CCW, forward, P.n)
    return BoundaryArc(i, j, ArcOrientation.CW, backward, P.n)


# =============================================================================
# WEDGE DIRECTIONS
# =============================================================================

@dataclass(frozen=True)
class WedgeDirections:
    index: int
    inward: Vector
    outward: Vector
    epsilon: Fraction  # a verified step for both directions

    def toward(self, interior: bool) -> Vector:
        return self.inward if interior else self.outward


def wedge_directions(P: SimplePolygon, i: int) -> WedgeDirections:
    """Rational inward/outward vectors at p_i, with a verified epsilon for both."""
    return _wedge_directions(P, i % P.n)


# entries are per vertex, so room for CACHE_SIZE polygons of 16 vertices
@lru_cache(maxsize=CACHE_SIZE * 16)
def _wedge_directions(P: SimplePolygon, i: int) -> WedgeDirections:
    from app.geometry.raindrop import classify, get_context
    from app.geometry.visibility import segment_avoids

    p = P.vertex(i)
    back = P.vertex(i - 1) - p
    ahead = P.vertex(i + 1) - p
    if back.cross(ahead) == 0:
        d = ahead.perp()
    else:
        d = back + ahead

    ctx = get_context(P)
    eps = Fraction(1)
    for _ in range(HALVING_CAP):
        plus, minus = p + d * eps, p + d * (-eps)
        if segment_avoids(P, Segment(p, plus)) and segment_avoids(P, Segment(p, minus)):
            loc_plus = classify(ctx, plus)
            loc_minus = classify(ctx, minus)
            if not loc_plus.on_boundary and not loc_minus.on_boundary and loc_plus.tag != loc_minus.tag:
                inward, outward = (d, -d) if loc_plus.is_interior else (-d, d)
                return WedgeDirections(i, inward, outward, eps)
        eps /= 2
        logger.debug("wedge %d: halving epsilon to %s", i, eps)
    raise HaltingCapExceeded(f"wedge directions at vertex {i}", HALVING_CAP)
