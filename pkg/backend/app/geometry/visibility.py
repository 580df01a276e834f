"""
Visibility
==========
Open-segment visibility against the polygon, first-hit ray casting, the
visible-vertex constructions and exact angular sweeps around a point.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterator, List, Optional, Tuple

from app.config import DEFAULT_SEED, DOUBLING_CAP, HALVING_CAP
from app.errors import ConstructionFailed, HaltingCapExceeded, PreconditionViolated
from app.geometry.exact import Point, Segment, Vector, orient, point_on_segment, ray_segment_hit
from app.geometry.polygon import SimplePolygon, cyclic_edge_distance, polygon_bounding_box
from app.geometry.raindrop import Feature, LocationTag, boundary_feature, classify, get_context

logger = logging.getLogger(__name__)


def _sgn(value: Fraction) -> int:
    return (value > 0) - (value < 0)


# =============================================================================
# SEGMENT PREDICATES
# =============================================================================

def segment_avoids(P: SimplePolygon, s: Segment) -> bool:
    """True iff the open segment ]s.a, s.b[ meets no point of P."""
    ax, ay, bx, by = s.a.x, s.a.y, s.b.x, s.b.y
    lo_x, hi_x = (ax, bx) if ax <= bx else (bx, ax)
    lo_y, hi_y = (ay, by) if ay <= by else (by, ay)
    ux, uy = bx - ax, by - ay
    for box in P.edge_boxes:
        if box.max_x < lo_x or box.min_x > hi_x or box.max_y < lo_y or box.min_y > hi_y:
            continue
        c, d = box.segment.a, box.segment.b
        ex, ey = d.x - c.x, d.y - c.y
        d1 = _sgn(ex * (ay - c.y) - ey * (ax - c.x))
        d2 = _sgn(ex * (by - c.y) - ey * (bx - c.x))
        if d1 == 0 and d2 == 0:
            norm = ux * ux + uy * uy
            tc = ((c.x - ax) * ux + (c.y - ay) * uy) / norm
            td = ((d.x - ax) * ux + (d.y - ay) * uy) / norm
            lo, hi = min(tc, td), max(tc, td)
            if max(lo, 0) < min(hi, 1):
                return False
            continue
        if d1 * d2 > 0:
            continue
        d3 = _sgn(ux * (c.y - ay) - uy * (c.x - ax))
        d4 = _sgn(ux * (d.y - ay) - uy * (d.x - ax))
        if d3 * d4 > 0:
            continue
        if d1 != 0 and d2 != 0:
            return False
    return True


def segment_avoids_closed(P: SimplePolygon, s: Segment) -> bool:
    """True iff the closed segment [s.a, s.b] meets no point of P."""
    if boundary_feature(P, s.a) is not None or boundary_feature(P, s.b) is not None:
        return False
    return segment_avoids(P, s)


def sees_point(P: SimplePolygon, p: Point, q: Point) -> bool:
    """p sees q: distinct points whose open segment avoids P."""
    return p != q and segment_avoids(P, Segment(p, q))


def segment_within(P: SimplePolygon, s: Segment, tag: LocationTag) -> bool:
    """True iff the closed segment s lies in the closure of the `tag` component.

    s is cut at every point where it meets P; each piece then lies wholly in
    one component or on P, so classifying the piece midpoints is exact.
    """
    ctx = get_context(P)
    r = s.direction
    norm = r.dot(r)
    cuts = {Fraction(0), Fraction(1)}
    for q in P.vertices:
        if point_on_segment(q, s):
            cuts.add((q - s.a).dot(r) / norm)
    for e in P.edges:
        d = e.direction
        denom = r.cross(d)
        if denom == 0:
            continue
        w = e.a - s.a
        t, u = w.cross(d) / denom, w.cross(r) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            cuts.add(t)
    ordered = sorted(cuts)
    for lo, hi in zip(ordered, ordered[1:]):
        loc = classify(ctx, s.a + r * ((lo + hi) / 2))
        if not loc.on_boundary and loc.tag != tag:
            return False
    return True


def _require_off(P: SimplePolygon, p: Point, label: str = "p"):
    feature = boundary_feature(P, p)
    if feature is not None:
        raise PreconditionViolated(f"{label} = ({p}) lies on the polygon ({feature})")


def sees_vertex(P: SimplePolygon, p: Point, i: int) -> bool:
    _require_off(P, p)
    return segment_avoids(P, Segment(p, P.vertex(i)))


def visible_vertices(P: SimplePolygon, p: Point) -> List[int]:
    """Every vertex index seen by p, by brute force."""
    _require_off(P, p)
    return [i for i, q in enumerate(P.vertices) if segment_avoids(P, Segment(p, q))]


def common_visible_vertices(P: SimplePolygon, a: Point, b: Point) -> List[int]:
    seen_b = set(visible_vertices(P, b))
    return [i for i in visible_vertices(P, a) if i in seen_b]


# =============================================================================
# RAY CASTING
# =============================================================================

@dataclass(frozen=True)
class FirstHit:
    point: Point
    feature: Feature
    lam: Fraction


def first_hit(P: SimplePolygon, origin: Point, direction: Vector) -> Optional[FirstHit]:
    """The point of P with the smallest ray parameter, with the vertex or edge carrying it."""
    _require_off(P, origin, "origin")
    if direction.is_zero():
        raise PreconditionViolated("ray direction must be nonzero")
    best = None
    for s in P.edges:
        hit = ray_segment_hit(origin, direction, s)
        if hit is not None and (best is None or hit.lam < best.lam):
            best = hit
    if best is None:
        return None
    return FirstHit(best.point, boundary_feature(P, best.point), best.lam)


def ray_misses(P: SimplePolygon, origin: Point, direction: Vector) -> bool:
    return all(ray_segment_hit(origin, direction, s) is None for s in P.edges)


@dataclass(frozen=True)
class SeenEdge:
    edge: int
    witness: Point


def _candidate_directions(P: SimplePolygon, p: Point, seed: int) -> Iterator[Vector]:
    """Toward the vertex centroid first, then toward seeded points on each edge."""
    cx = sum(q.x for q in P.vertices) / P.n
    cy = sum(q.y for q in P.vertices) / P.n
    centroid = Point(cx, cy)
    if centroid != p:
        yield centroid - p
    rng = random.Random(seed)
    order = list(range(P.n))
    rng.shuffle(order)
    for r in range(1, HALVING_CAP + 1):
        t = Fraction(r, 2 * r + 1)
        for e in order:
            s = P.edges[e]
            target = s.a.lerp(s.b, t if rng.random() < 0.5 else 1 - t)
            yield target - p


def seen_edge(P: SimplePolygon, p: Point, seed: int = DEFAULT_SEED) -> SeenEdge:
    """An edge seen by p, with a witness in its relative interior reached by a vertex-avoiding ray."""
    _require_off(P, p)
    for direction in _candidate_directions(P, p, seed):
        hit = first_hit(P, p, direction)
        if hit is not None and hit.feature.kind == "edge":
            return SeenEdge(hit.feature.index, hit.point)
    raise HaltingCapExceeded("vertex-avoiding ray", HALVING_CAP)


# =============================================================================
# VISIBLE VERTICES
# =============================================================================

@dataclass(frozen=True)
class VisibleVertexPair:
    first: int
    second: int
    nonadjacent: bool


def _pair(P: SimplePolygon, i: int, j: int) -> VisibleVertexPair:
    return VisibleVertexPair(i, j, cyclic_edge_distance(P, i, j) >= 2)


def in_closed_triangle(q: Point, a: Point, b: Point, c: Point) -> bool:
    s1, s2, s3 = orient(a, b, q), orient(b, c, q), orient(c, a, q)
    return (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0)


def visible_vertex_in_triangle(P: SimplePolygon, a: Point, b: Point, bp: Point) -> int:
    """A vertex seen by a inside the triangle [a, bp, b] but off [a, b], found by sweeping a->b toward a->bp."""
    _require_off(P, a, "a")
    j = P.vertex_index.get(bp)
    if j is None:
        raise PreconditionViolated(f"b' = ({bp}) is not a vertex")
    if b == bp or not (point_on_segment(b, P.edge(j)) or point_on_segment(b, P.edge(j + 1))):
        raise PreconditionViolated(f"b = ({b}) is not on an edge ending at vertex {j} (other than it)")
    if a == b or not segment_avoids(P, Segment(a, b)):
        raise PreconditionViolated("a does not see b")
    if segment_avoids(P, Segment(a, bp)):
        return j

    sense = orient(a, b, bp)
    ab = Segment(a, b)
    blockers = [i for i, q in enumerate(P.vertices)
                if in_closed_triangle(q, a, b, bp) and not point_on_segment(q, ab)]

    def sweep_order(i: int, k: int) -> int:
        qi, qk = P.vertices[i], P.vertices[k]
        turn = orient(a, qi, qk) * sense
        if turn != 0:
            return -turn
        di, dk = (qi - a).dot(qi - a), (qk - a).dot(qk - a)
        return (di > dk) - (di < dk)

    first = min(blockers, key=cmp_to_key(sweep_order))
    if not segment_avoids(P, Segment(a, P.vertices[first])):
        raise ConstructionFailed(f"sweep blocker {first} is not visible from a")
    return first


def two_visible_vertices(P: SimplePolygon, a: Point, seed: int = DEFAULT_SEED) -> VisibleVertexPair:
    """Two distinct vertices seen by a, one on each side of a vertex-avoiding ray."""
    seen = seen_edge(P, a, seed)
    i0, i1 = P.edge_endpoints(seen.edge)
    c1 = visible_vertex_in_triangle(P, a, seen.witness, P.vertex(i0))
    c2 = visible_vertex_in_triangle(P, a, seen.witness, P.vertex(i1))
    return _pair(P, c1, c2)


def two_nonadjacent_visible(P: SimplePolygon, a: Point, seed: int = DEFAULT_SEED) -> VisibleVertexPair:
    """Two non-adjacent vertices seen by a point from which every ray meets P."""
    if P.n < 4:
        raise PreconditionViolated(f"n >= 4 required, got n = {P.n}")
    if free_direction(P, a) is not None:
        raise PreconditionViolated(f"some ray from ({a}) misses the polygon")

    c = two_visible_vertices(P, a, seed).first
    hit = first_hit(P, a, a - P.vertex(c))
    if hit is None:
        raise ConstructionFailed("ray opposite to a visible vertex escaped")
    if hit.feature.kind == "vertex":
        return _pair(P, c, hit.feature.index)

    i0, i1 = P.edge_endpoints(hit.feature.index)
    c1 = visible_vertex_in_triangle(P, a, hit.point, P.vertex(i0))
    c2 = visible_vertex_in_triangle(P, a, hit.point, P.vertex(i1))
    if cyclic_edge_distance(P, c1, c2) >= 2:
        return _pair(P, c1, c2)
    for other in (c1, c2):
        if cyclic_edge_distance(P, c, other) >= 2:
            return _pair(P, c, other)
    raise ConstructionFailed("no non-adjacent visible pair; polygon must be a triangle")


# =============================================================================
# ANGULAR SWEEPS
# =============================================================================

def _upper(v: Vector) -> bool:
    return v.dy > 0 or (v.dy == 0 and v.dx > 0)


def _angle_cmp(u: Vector, w: Vector) -> int:
    """Order directions by counterclockwise angle from +x."""
    hu, hw = _upper(u), _upper(w)
    if hu != hw:
        return -1 if hu else 1
    c = u.cross(w)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _ccw_before(base: Vector, x: Vector, y: Vector) -> bool:
    """Counterclockwise angle base->x is strictly smaller than base->y."""
    def half(v: Vector) -> int:
        c = base.cross(v)
        return 0 if c > 0 or (c == 0 and base.dot(v) > 0) else 1
    hx, hy = half(x), half(y)
    if hx != hy:
        return hx < hy
    return x.cross(y) > 0


def vertex_directions(P: SimplePolygon, a: Point) -> List[Vector]:
    """Distinct directions a -> p_i in counterclockwise order."""
    dirs = sorted((q - a for q in P.vertices), key=cmp_to_key(_angle_cmp))
    distinct: List[Vector] = []
    for d in dirs:
        if distinct and _angle_cmp(distinct[-1], d) == 0:
            continue
        distinct.append(d)
    return distinct


def _gaps(directions: List[Vector]) -> List[Tuple[Vector, Vector]]:
    """Consecutive counterclockwise gaps, split until each is below a half turn."""
    gaps = []
    k = len(directions)
    for idx in range(k):
        u, w = directions[idx], directions[(idx + 1) % k]
        if k == 1:
            w = u
        while not (u.cross(w) > 0):
            m = u.perp()
            gaps.append((u, m))
            u = m
        gaps.append((u, w))
    return gaps


@dataclass(frozen=True)
class FreeDirection:
    origin: Point
    dir: Vector


def free_direction(P: SimplePolygon, a: Point) -> Optional[FreeDirection]:
    """A ray from a that misses P, or None when every ray meets P."""
    _require_off(P, a, "a")
    dirs = vertex_directions(P, a)
    k = len(dirs)
    for idx in range(k):
        u, w = dirs[idx], dirs[(idx + 1) % k]
        t = Fraction(1)
        for _ in range(HALVING_CAP):
            d = u.rotated(t)
            if _ccw_before(u, d, w) or k == 1:
                break
            t /= 2
        else:
            raise HaltingCapExceeded("free arc rotation", HALVING_CAP)
        if ray_misses(P, a, d):
            return FreeDirection(a, d)
    return None


def free_direction_near(P: SimplePolygon, fd: FreeDirection, avoid: Vector) -> FreeDirection:
    """Rotate a free direction inside its open arc until it is not parallel to `avoid`."""
    if not fd.dir.parallel_to(avoid):
        return fd
    t = Fraction(1)
    for _ in range(HALVING_CAP):
        for cand in (fd.dir.rotated(t), fd.dir.rotated(-t)):
            if not cand.parallel_to(avoid) and ray_misses(P, fd.origin, cand):
                return FreeDirection(fd.origin, cand)
        t /= 2
    raise HaltingCapExceeded("independent free direction", HALVING_CAP)


# =============================================================================
# TWO-LINK WAYPOINTS
# =============================================================================

HalfPlane = Tuple[Point, Vector]  # keep x with (x - q) on the left of d


@dataclass(frozen=True)
class Sector:
    """Open region seen from `apex` between two vertex directions."""
    apex: Point
    constraints: Tuple[HalfPlane, ...]
    bounded: bool


def visibility_sectors(P: SimplePolygon, a: Point) -> List[Sector]:
    """The region seen by a, as open convex sectors between consecutive vertex directions."""
    _require_off(P, a, "a")
    sectors = []
    for u, w in _gaps(vertex_directions(P, a)):
        constraints = [(a, u), (a, -w)]
        hit = first_hit(P, a, u + w)
        if hit is not None:
            e = P.edges[hit.feature.index]
            if orient(e.a, e.b, a) > 0:
                constraints.append((e.a, e.b - e.a))
            else:
                constraints.append((e.b, e.a - e.b))
        sectors.append(Sector(a, tuple(constraints), hit is not None))
    return sectors


def _clip(poly: List[Point], q: Point, d: Vector) -> List[Point]:
    out: List[Point] = []
    m = len(poly)
    for idx in range(m):
        cur, nxt = poly[idx], poly[(idx + 1) % m]
        sc = d.cross(cur - q)
        sn = d.cross(nxt - q)
        if sc >= 0:
            out.append(cur)
        if (sc > 0 and sn < 0) or (sc < 0 and sn > 0):
            out.append(cur.lerp(nxt, sc / (sc - sn)))
    return out


def _interior_point(constraints, box: Tuple[Fraction, Fraction, Fraction, Fraction]) -> Optional[Point]:
    x0, y0, x1, y1 = box
    poly = [Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)]
    for q, d in constraints:
        poly = _clip(poly, q, d)
        if len(poly) < 3:
            return None
    area2 = sum(poly[i - 1].x * poly[i].y - poly[i - 1].y * poly[i].x for i in range(len(poly)))
    if area2 == 0:
        return None
    return Point(sum(p.x for p in poly) / len(poly), sum(p.y for p in poly) / len(poly))


def _scaled_box(points, factor: int):
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1)) * factor / 2
    return cx - half, cy - half, cx + half, cy + half


def common_visible_point(P: SimplePolygon, a: Point, b: Point) -> Optional[Point]:
    """A point seen by both a and b, or None when no two-link path joins them."""
    sa = visibility_sectors(P, a)
    sb = visibility_sectors(P, b)
    pairs = [(s, t) for s in sa for t in sb]
    pts = list(P.vertices) + [a, b]
    factor = 2
    for _ in range(DOUBLING_CAP):
        box = _scaled_box(pts, factor)
        for s, t in pairs:
            w = _interior_point(s.constraints + t.constraints, box)
            if w is not None:
                return w
        # only unbounded sector pairs can still meet farther out
        pairs = [(s, t) for s, t in pairs if not (s.bounded or t.bounded)]
        if not pairs:
            return None
        factor *= 2
    return None
