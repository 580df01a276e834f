"""
Raindrop Classifier
===================
Point location by the parity of edges met by a generic downward ray,
with the two-sided vertex rule for rays through a vertex.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from app.config import CACHE_SIZE, DEFAULT_SEED, HALVING_CAP
from app.errors import HaltingCapExceeded, NotInS0, PreconditionViolated
from app.geometry.exact import Point, Segment, Vector, orient, point_on_segment, ray_segment_hit
from app.geometry.polygon import SimplePolygon, generic_direction, is_generic

logger = logging.getLogger(__name__)


class LocationTag(str, Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class Feature:
    kind: str  # "vertex" or "edge"
    index: int

    def __str__(self) -> str:
        return f"{self.kind} {self.index}"


@dataclass(frozen=True)
class Location:
    tag: LocationTag
    feature: Optional[Feature] = None

    @property
    def on_boundary(self) -> bool:
        return self.tag == LocationTag.BOUNDARY

    @property
    def is_interior(self) -> bool:
        return self.tag == LocationTag.INTERIOR

    def __str__(self) -> str:
        if self.feature is None:
            return self.tag.value
        return f"{self.tag.value} {self.feature}"


INTERIOR = Location(LocationTag.INTERIOR)
EXTERIOR = Location(LocationTag.EXTERIOR)


@dataclass(frozen=True)
class RaindropContext:
    """A polygon plus a generic direction v; rays fall along -v."""
    polygon: SimplePolygon
    v: Vector

    def __post_init__(self):
        if not is_generic(self.polygon, self.v):
            raise PreconditionViolated(f"direction ({self.v.dx}, {self.v.dy}) is parallel to a vertex pair")

    @property
    def down(self) -> Vector:
        return -self.v


@lru_cache(maxsize=CACHE_SIZE)
def get_context(P: SimplePolygon) -> RaindropContext:
    """Get or create the cached context for P using its generic direction."""
    return RaindropContext(P, generic_direction(P))


# =============================================================================
# BOUNDARY DETECTION
# =============================================================================

def boundary_feature(P: SimplePolygon, p: Point) -> Optional[Feature]:
    """Lowest-index feature containing p, vertices before edges."""
    i = P.vertex_index.get(p)
    if i is not None:
        return Feature("vertex", i)
    for box in P.edge_boxes:
        if box.min_x <= p.x <= box.max_x and box.min_y <= p.y <= box.max_y:
            if point_on_segment(p, box.segment):
                return Feature("edge", box.index)
    return None


def on_polygon(P: SimplePolygon, p: Point) -> bool:
    return boundary_feature(P, p) is not None


# =============================================================================
# PARITY
# =============================================================================

def _vertex_on_ray(origin: Point, direction: Vector, q: Point) -> bool:
    w = q - origin
    return direction.cross(w) == 0 and direction.dot(w) >= 0


def crossing_count(ctx: RaindropContext, p: Point) -> int:
    """Number of edges met by the closed downward ray from p; p must be in S0."""
    P = ctx.polygon
    if on_polygon(P, p):
        raise NotInS0(f"point ({p}) lies on the polygon")
    down = ctx.down
    for i, q in enumerate(P.vertices):
        if _vertex_on_ray(p, down, q):
            raise NotInS0(f"downward ray from ({p}) meets vertex {i}")
    return sum(1 for s in P.edges if ray_segment_hit(p, down, s) is not None)


def classify(ctx: RaindropContext, p: Point) -> Location:
    P = ctx.polygon
    feature = boundary_feature(P, p)
    if feature is not None:
        return Location(LocationTag.BOUNDARY, feature)

    down = ctx.down
    apex = p + ctx.v  # second point on the line L = p + Rv
    count = 0
    hit_vertices = set()
    for i, q in enumerate(P.vertices):
        if not _vertex_on_ray(p, down, q):
            continue
        hit_vertices.add(q)
        # two-sided vertex counts once, one-sided vertex not at all
        side_prev = orient(p, apex, P.vertex(i - 1))
        side_next = orient(p, apex, P.vertex(i + 1))
        if side_prev != side_next:
            count += 1
    for s in P.edges:
        hit = ray_segment_hit(p, down, s)
        if hit is not None and hit.point not in hit_vertices:
            count += 1
    return INTERIOR if count % 2 else EXTERIOR


def classify_point(P: SimplePolygon, p: Point) -> Location:
    return classify(get_context(P), p)


def classify_by_random_ray(P: SimplePolygon, p: Point, seed: int = DEFAULT_SEED) -> Location:
    """Cross-check classifier: plain parity along a seeded ray that avoids every vertex."""
    feature = boundary_feature(P, p)
    if feature is not None:
        return Location(LocationTag.BOUNDARY, feature)
    rng = random.Random(seed)
    while True:
        direction = Vector(rng.randint(-1000, 1000), rng.randint(-1000, 1000))
        if direction.is_zero():
            continue
        if any(_vertex_on_ray(p, direction, q) for q in P.vertices):
            continue
        count = sum(1 for s in P.edges if ray_segment_hit(p, direction, s) is not None)
        return INTERIOR if count % 2 else EXTERIOR


# =============================================================================
# LOCAL PROPERTIES
# =============================================================================

COMPASS = tuple(Vector(dx, dy) for dx, dy in
                ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)))


def stable_radius(ctx: RaindropContext, p: Point) -> Fraction:
    """Verified delta such that every compass segment [p, p + delta*c] avoids P."""
    from app.geometry.visibility import segment_avoids_closed

    P = ctx.polygon
    if on_polygon(P, p):
        raise PreconditionViolated(f"point ({p}) lies on the polygon")
    delta = Fraction(1)
    for _ in range(HALVING_CAP):
        if all(segment_avoids_closed(P, Segment(p, p + c * delta)) for c in COMPASS):
            return delta
        delta /= 2
    raise HaltingCapExceeded("local constancy radius", HALVING_CAP)


def location_is_stable(ctx: RaindropContext, p: Point) -> bool:
    """Whether the 8 compass perturbations of p at the verified radius share p's location."""
    delta = stable_radius(ctx, p)
    here = classify(ctx, p)
    return all(classify(ctx, p + c * delta) == here for c in COMPASS)


def straddle_flip(ctx: RaindropContext, x: Point) -> Tuple[Location, Location, Fraction]:
    """Locations of x + eps*v and x - eps*v for a verified eps; x must lie in an edge's relative interior."""
    from app.geometry.visibility import segment_avoids

    P = ctx.polygon
    feature = boundary_feature(P, x)
    if feature is None or feature.kind != "edge":
        raise PreconditionViolated(f"point ({x}) is not in the relative interior of an edge")
    eps = Fraction(1)
    for _ in range(HALVING_CAP):
        above, below = x + ctx.v * eps, x + ctx.v * (-eps)
        if (segment_avoids(P, Segment(x, above)) and segment_avoids(P, Segment(x, below))
                and not on_polygon(P, above) and not on_polygon(P, below)):
            return classify(ctx, above), classify(ctx, below), eps
        eps /= 2
    raise HaltingCapExceeded("edge straddle epsilon", HALVING_CAP)
