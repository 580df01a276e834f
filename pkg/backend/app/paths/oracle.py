"""
Link Distance Oracle
====================
Brute-force link distance on small instances: breadth-first layering over a
finite field of candidate bend points (pushed vertices and the intersections
of lines through vertex/endpoint pairs), with an exact two-link test and
exterior box doubling.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from app.config import BOX_FACTOR, DEFAULT_SEED, DOUBLING_CAP, ORACLE_MAX_N, STABLE_DOUBLINGS
from app.errors import ComponentMismatch, OracleTooLarge, PreconditionViolated, Unreachable
from app.geometry.exact import Point, Segment
from app.geometry.polygon import SimplePolygon, is_convex, wedge_directions
from app.geometry.raindrop import LocationTag, classify, get_context
from app.geometry.visibility import common_visible_point, segment_avoids, segment_within
from app.paths.link_path import Polyline

logger = logging.getLogger(__name__)

Box = Tuple[Fraction, Fraction, Fraction, Fraction]
Line = Tuple[Fraction, Fraction, Fraction]  # A x + B y + C = 0, normalized


@dataclass
class CandidateField:
    domain: LocationTag
    polygon: SimplePolygon
    points: List[Point]
    box: Optional[Box] = None
    # closure fields join candidates whose closed segment stays in the closed domain
    closed: bool = False
    _visible: Dict[Tuple[int, int], bool] = field(default_factory=dict, repr=False)

    def index_of(self, p: Point) -> int:
        return self.points.index(p)

    def visible(self, i: int, j: int) -> bool:
        """Symmetric visibility between two candidates (open segment avoids P)."""
        key = (i, j) if i < j else (j, i)
        cached = self._visible.get(key)
        if cached is None:
            p, q = self.points[i], self.points[j]
            if p == q:
                cached = False
            elif self.closed:
                cached = segment_within(self.polygon, Segment(p, q), self.domain)
            else:
                cached = segment_avoids(self.polygon, Segment(p, q))
            self._visible[key] = cached
        return cached


@dataclass(frozen=True)
class StabilityRecord:
    box_scale: int
    distance: int
    candidates: int


@dataclass(frozen=True)
class OracleResult:
    distance: int
    witness: Polyline
    stability: Tuple[StabilityRecord, ...] = ()


# =============================================================================
# CANDIDATES
# =============================================================================

def _line_through(p: Point, q: Point) -> Line:
    A = q.y - p.y
    B = p.x - q.x
    C = -(A * p.x + B * p.y)
    lead = A if A != 0 else B
    return (A / lead, B / lead, C / lead)


def _meet(l1: Line, l2: Line) -> Optional[Point]:
    A1, B1, C1 = l1
    A2, B2, C2 = l2
    det = A1 * B2 - A2 * B1
    if det == 0:
        return None
    return Point((B1 * C2 - B2 * C1) / det, (C1 * A2 - C2 * A1) / det)


def _box_lines(box: Box) -> List[Line]:
    x0, y0, x1, y1 = box
    one, zero = Fraction(1), Fraction(0)
    return [(one, zero, -x0), (one, zero, -x1), (zero, one, -y0), (zero, one, -y1)]


def _in_box(p: Point, box: Optional[Box]) -> bool:
    if box is None:
        return True
    x0, y0, x1, y1 = box
    return x0 <= p.x <= x1 and y0 <= p.y <= y1


def domain_box(P: SimplePolygon, scale: int, extra: Sequence[Point] = ()) -> Box:
    """Square box centred on P's bounding box, `scale` times its larger side, grown to hold `extra`."""
    xs = [p.x for p in P.vertices]
    ys = [p.y for p in P.vertices]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys)) * scale / 2
    for p in extra:
        half = max(half, abs(p.x - cx) * 2, abs(p.y - cy) * 2)
    return cx - half, cy - half, cx + half, cy + half


def build_candidates(P: SimplePolygon, extras: Sequence[Point], domain: LocationTag,
                     box: Optional[Box] = None, carry: Sequence[Point] = ()) -> CandidateField:
    """Extras, pushed vertices and in-domain arrangement points; `carry` points join without spawning lines."""
    ctx = get_context(P)
    for p in extras:
        if classify(ctx, p).tag != domain:
            raise PreconditionViolated(f"extra point ({p}) is not in the {domain.value}")

    interior = domain == LocationTag.INTERIOR
    pushed = []
    for i in range(P.n):
        wedge = wedge_directions(P, i)
        pushed.append(P.vertex(i) + wedge.toward(interior) * wedge.epsilon)

    sources = list(dict.fromkeys(list(P.vertices) + list(extras)))
    lines = list(dict.fromkeys(_line_through(p, q)
                               for idx, p in enumerate(sources) for q in sources[idx + 1:]))
    if box is not None and not interior:
        lines.extend(_box_lines(box))

    arrangement = set()
    for idx, l1 in enumerate(lines):
        for l2 in lines[idx + 1:]:
            p = _meet(l1, l2)
            if p is not None and _in_box(p, box):
                arrangement.add(p)
    inside = sorted((p for p in arrangement if classify(ctx, p).tag == domain), key=Point.key)

    points = list(dict.fromkeys(list(extras) + pushed + list(carry) + inside))
    logger.debug("candidate field: %d lines, %d points", len(lines), len(points))
    return CandidateField(domain, P, points, box)


# =============================================================================
# BREADTH-FIRST LAYERING
# =============================================================================

def _bfs(cf: CandidateField, src: int, dst: int) -> Optional[Polyline]:
    parent: Dict[int, int] = {}
    frontier = [src]
    unvisited = set(range(len(cf.points))) - {src}
    while frontier:
        hit = next((f for f in frontier if cf.visible(f, dst)), None)
        if hit is not None:
            parent[dst] = hit
            chain = [dst]
            while chain[-1] != src:
                chain.append(parent[chain[-1]])
            return Polyline(tuple(cf.points[i] for i in reversed(chain)))
        layer = []
        for c in sorted(unvisited):
            f = next((f for f in frontier if cf.visible(f, c)), None)
            if f is not None:
                parent[c] = f
                layer.append(c)
        unvisited.difference_update(layer)
        frontier = layer
        logger.debug("bfs layer: %d new candidates", len(layer))
    return None


def _bfs_distances(cf: CandidateField, src: int) -> Dict[int, int]:
    dist = {src: 0}
    frontier = [src]
    unvisited = set(range(len(cf.points))) - {src}
    k = 0
    while frontier:
        k += 1
        layer = [c for c in sorted(unvisited) if any(cf.visible(f, c) for f in frontier)]
        for c in layer:
            dist[c] = k
        unvisited.difference_update(layer)
        frontier = layer
    return dist


# =============================================================================
# LINK DISTANCE
# =============================================================================

def _check_size(P: SimplePolygon, max_n: Optional[int]):
    limit = ORACLE_MAX_N if max_n is None else max_n
    if P.n > limit:
        raise OracleTooLarge(P.n, limit)


def _domain_of(P: SimplePolygon, a: Point, b: Point, domain: Optional[LocationTag]) -> LocationTag:
    ctx = get_context(P)
    loc_a, loc_b = classify(ctx, a), classify(ctx, b)
    if loc_a.on_boundary or loc_b.on_boundary:
        raise PreconditionViolated("oracle endpoints must not lie on the polygon")
    if loc_a.tag != loc_b.tag:
        raise ComponentMismatch(loc_a.tag.value, loc_b.tag.value)
    if domain is not None and domain != loc_a.tag:
        raise ComponentMismatch(domain.value, loc_a.tag.value)
    return loc_a.tag


def link_distance(P: SimplePolygon, a: Point, b: Point, domain: Optional[LocationTag] = None,
                  max_n: Optional[int] = None) -> OracleResult:
    """Link distance between a and b inside their common component."""
    _check_size(P, max_n)
    domain = _domain_of(P, a, b, domain)
    if a == b:
        raise PreconditionViolated("endpoints coincide")
    if segment_avoids(P, Segment(a, b)):
        return OracleResult(1, Polyline((a, b)))
    w = common_visible_point(P, a, b)
    if w is not None:
        return OracleResult(2, Polyline((a, w, b)))

    if domain == LocationTag.INTERIOR:
        cf = build_candidates(P, [a, b], domain)
        path = _bfs(cf, 0, 1)
        if path is None:
            raise Unreachable(f"no candidate path from ({a}) to ({b})")
        return OracleResult(path.links, path, (StabilityRecord(0, path.links, len(cf.points)),))

    history: List[StabilityRecord] = []
    best: Optional[Polyline] = None
    carry: List[Point] = []
    scale = BOX_FACTOR
    for _ in range(DOUBLING_CAP):
        box = domain_box(P, scale, (a, b))
        cf = build_candidates(P, [a, b], domain, box, carry)
        path = _bfs(cf, 0, 1)
        if path is None:
            raise Unreachable(f"no candidate path from ({a}) to ({b}) in box x{scale}")
        if best is None or path.links < best.links:
            best = path
        history.append(StabilityRecord(scale, path.links, len(cf.points)))
        logger.info("exterior oracle: box x%d -> %d links", scale, path.links)
        recent = history[-(STABLE_DOUBLINGS + 1):]
        if len(recent) == STABLE_DOUBLINGS + 1 and len({r.distance for r in recent}) == 1:
            return OracleResult(best.links, best, tuple(history))
        carry = cf.points[2:]
        scale *= 2
    raise Unreachable("exterior distance did not stabilize under box doubling")


# =============================================================================
# POLYGONAL DIAMETER
# =============================================================================

@dataclass(frozen=True)
class PoldiamEstimate:
    lower_bound: int
    pair: Tuple[Point, Point]
    witness: Polyline
    samples: int


def _sample_domain(P: SimplePolygon, domain: LocationTag, count: int, rng: random.Random,
                   box: Box) -> List[Point]:
    ctx = get_context(P)
    x0, y0, x1, y1 = box
    out: List[Point] = []
    for _ in range(count * 200):
        if len(out) >= count:
            break
        p = Point(x0 + (x1 - x0) * Fraction(rng.randint(1, 1023), 1024),
                  y0 + (y1 - y0) * Fraction(rng.randint(1, 1023), 1024))
        if classify(ctx, p).tag == domain and p not in out:
            out.append(p)
    return out


def poldiam_sampled(P: SimplePolygon, domain: LocationTag, budget: int, seed: int = DEFAULT_SEED,
                    extras: Sequence[Point] = (), max_n: Optional[int] = None,
                    refine: int = 3) -> PoldiamEstimate:
    """Seeded lower bound on the polygonal diameter of one component."""
    if budget < 1:
        raise PreconditionViolated("sample budget must be at least 1")
    _check_size(P, max_n)
    rng = random.Random(seed)
    if domain == LocationTag.INTERIOR:
        box = domain_box(P, 1)
        field_box = None
    else:
        box = field_box = domain_box(P, BOX_FACTOR)
    samples = list(dict.fromkeys(list(extras) + _sample_domain(P, domain, budget, rng, box)))
    if len(samples) < 2:
        raise PreconditionViolated(f"could not sample two points in the {domain.value}")

    cf = build_candidates(P, [], domain, field_box, carry=samples)
    index = [cf.index_of(p) for p in samples]
    ranked = []
    for i, src in enumerate(index):
        dist = _bfs_distances(cf, src)
        for j in range(i + 1, len(index)):
            ranked.append((-dist.get(index[j], len(cf.points)), i, j))
    ranked.sort()

    best: Optional[Tuple[int, Tuple[Point, Point], Polyline]] = None
    for _, i, j in ranked[:max(refine, 1)]:
        a, b = samples[i], samples[j]
        result = link_distance(P, a, b, domain, max_n)
        if best is None or result.distance > best[0]:
            best = (result.distance, (a, b), result.witness)
    distance, pair, witness = best
    logger.info("poldiam %s: lower bound %d over %d samples", domain.value, distance, len(samples))
    return PoldiamEstimate(distance, pair, witness, len(samples))


# =============================================================================
# CLOSURE DISTANCES
# =============================================================================

def closure_candidates(P: SimplePolygon, a: Point, b: Point, domain: LocationTag) -> CandidateField:
    """a, b, the vertices and every arrangement point in the closed domain; links may run along P."""
    ctx = get_context(P)
    sources = list(dict.fromkeys([a, b] + list(P.vertices)))
    lines = list(dict.fromkeys(_line_through(p, q)
                               for idx, p in enumerate(sources) for q in sources[idx + 1:]))
    arrangement = set()
    for idx, l1 in enumerate(lines):
        for l2 in lines[idx + 1:]:
            p = _meet(l1, l2)
            if p is not None:
                arrangement.add(p)
    kept = sorted((p for p in arrangement if classify(ctx, p).tag in (domain, LocationTag.BOUNDARY)),
                  key=Point.key)
    points = list(dict.fromkeys(sources + kept))
    logger.debug("closure field: %d lines, %d points", len(lines), len(points))
    return CandidateField(domain, P, points, closed=True)


def closure_link_distance(P: SimplePolygon, a: Point, b: Point, domain: LocationTag,
                          max_n: Optional[int] = None) -> OracleResult:
    """Link distance inside the closure of one component; a and b may lie on P."""
    _check_size(P, max_n)
    ctx = get_context(P)
    for p in (a, b):
        tag = classify(ctx, p).tag
        if tag not in (domain, LocationTag.BOUNDARY):
            raise ComponentMismatch(domain.value, tag.value)
    if a == b:
        raise PreconditionViolated("endpoints coincide")
    cf = closure_candidates(P, a, b, domain)
    path = _bfs(cf, 0, 1)
    if path is None:
        raise Unreachable(f"no closure path from ({a}) to ({b})")
    return OracleResult(path.links, path, (StabilityRecord(0, path.links, len(cf.points)),))


def convex_closure_diameters(P: SimplePolygon, max_n: Optional[int] = None) -> Tuple[int, int]:
    """Largest closure link distances, interior then exterior, between edge midpoints of a convex P.

    Through the closed exterior an edge midpoint sees only the half-plane beyond
    its edge, so midpoints of two parallel edges are three links apart.
    """
    if not is_convex(P):
        raise PreconditionViolated("closure diameters are only computed for convex polygons")
    mids = [s.midpoint() for s in P.edges]
    pairs = [(p, q) for idx, p in enumerate(mids) for q in mids[idx + 1:]]
    interior = max(closure_link_distance(P, p, q, LocationTag.INTERIOR, max_n).distance for p, q in pairs)
    exterior = max(closure_link_distance(P, p, q, LocationTag.EXTERIOR, max_n).distance for p, q in pairs)
    logger.info("convex closure diameters: interior %d, exterior %d", interior, exterior)
    return interior, exterior
