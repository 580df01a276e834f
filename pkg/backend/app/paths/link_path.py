"""
Link Path Construction
======================
Explicit polygonal paths between two points of the same component of the
plane minus P, certified against the floor(n/2) / ceil(n/2) link bounds,
plus the simpler floor(n/2) + 3 construction via seen edges.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from app.config import DEFAULT_SEED, DOUBLING_CAP, HALVING_CAP
from app.errors import (
    ComponentMismatch,
    ConstructionFailed,
    HaltingCapExceeded,
    OnBoundaryInput,
    PreconditionViolated,
)
from app.geometry.exact import Point, Segment, Vector, point_on_segment
from app.geometry.polygon import (
    SimplePolygon,
    cyclic_edge_distance,
    is_convex,
    orientation,
    shorter_arc,
    wedge_directions,
)
from app.geometry.raindrop import LocationTag, boundary_feature, classify, get_context
from app.geometry.visibility import (
    FreeDirection,
    common_visible_point,
    free_direction,
    free_direction_near,
    seen_edge,
    segment_avoids,
    visible_vertices,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polyline:
    points: Tuple[Point, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a polyline needs at least two points")
        for p, q in zip(self.points, self.points[1:]):
            if p == q:
                raise ValueError(f"repeated consecutive point ({p})")

    @property
    def links(self) -> int:
        return len(self.points) - 1

    def segments(self) -> List[Segment]:
        return [Segment(p, q) for p, q in zip(self.points, self.points[1:])]


class CaseTag(str, Enum):
    DIRECT = "Direct"
    COMMON_VERTEX = "CommonVertex"
    BOUNDARY_ARC = "BoundaryArc"
    FAR_RAYS = "FarRays"
    MIXED = "Mixed"
    NAIVE = "Naive"


@dataclass(frozen=True)
class PathCertificate:
    path: Polyline
    component: LocationTag
    bound: int
    case: CaseTag

    @property
    def links(self) -> int:
        return self.path.links


def component_bound(n: int, component: LocationTag) -> int:
    return n // 2 if component == LocationTag.INTERIOR else (n + 1) // 2


def naive_bound(n: int) -> int:
    return n // 2 + 3


# =============================================================================
# CERTIFICATE CHECKS
# =============================================================================

def _sound(P: SimplePolygon, points: Sequence[Point], component: LocationTag) -> bool:
    ctx = get_context(P)
    for p, q in zip(points, points[1:]):
        if p == q or not segment_avoids(P, Segment(p, q)):
            return False
    return all(classify(ctx, p).tag == component for p in points[1:-1])


def verify_certificate(P: SimplePolygon, cert: PathCertificate) -> bool:
    """Exact check: open links avoid P, link midpoints and bends lie in the component, links <= bound."""
    ctx = get_context(P)
    for seg in cert.path.segments():
        if not segment_avoids(P, seg):
            raise PreconditionViolated(f"link ({seg.a}) -> ({seg.b}) meets the polygon")
        if classify(ctx, seg.midpoint()).tag != cert.component:
            raise PreconditionViolated(f"link ({seg.a}) -> ({seg.b}) leaves the {cert.component.value}")
    for p in cert.path.points:
        if classify(ctx, p).tag != cert.component:
            raise PreconditionViolated(f"path point ({p}) is not in the {cert.component.value}")
    if cert.links > cert.bound:
        raise PreconditionViolated(f"{cert.links} links exceed the bound {cert.bound}")
    return True


def _locate_pair(P: SimplePolygon, a: Point, b: Point) -> LocationTag:
    ctx = get_context(P)
    loc_a, loc_b = classify(ctx, a), classify(ctx, b)
    if loc_a.on_boundary:
        raise OnBoundaryInput("a", str(loc_a.feature))
    if loc_b.on_boundary:
        raise OnBoundaryInput("b", str(loc_b.feature))
    if loc_a.tag != loc_b.tag:
        raise ComponentMismatch(loc_a.tag.value, loc_b.tag.value)
    if a == b:
        raise PreconditionViolated("endpoints coincide")
    return loc_a.tag


# =============================================================================
# PUSH AWAY FROM P
# =============================================================================

def _push_direction(P: SimplePolygon, q: Point, interior: bool) -> Vector:
    feature = boundary_feature(P, q)
    if feature is None:
        raise PreconditionViolated(f"walk stop ({q}) is not on the polygon")
    if feature.kind == "vertex":
        return wedge_directions(P, feature.index).toward(interior)
    normal = P.edges[feature.index].direction.perp()  # left of the edge
    inward = normal if orientation(P) > 0 else -normal
    return inward if interior else -inward


def _share_edge(P: SimplePolygon, p: Point, q: Point) -> bool:
    return any(point_on_segment(p, s) and point_on_segment(q, s) for s in P.edges)


def _variants(a: Point, b: Point, stops: List[Point], pushed: List[Point], eps: Fraction) -> Iterable[List[Point]]:
    yield pushed
    toward_a = stops[0].lerp(a, eps)
    toward_b = stops[-1].lerp(b, eps)
    yield [toward_a] + pushed[1:]
    if len(stops) == 1:
        yield [toward_b]
        return
    yield pushed[:-1] + [toward_b]
    yield [toward_a] + pushed[1:-1] + [toward_b]


def push_off_boundary(P: SimplePolygon, a: Point, stops: Sequence[Point], b: Point,
                      component: LocationTag) -> Polyline:
    """Replace the boundary stops of a walk a -> q_1 .. q_k -> b by nearby component points (k + 1 links)."""
    stops = list(stops)
    if not stops:
        if a == b or not segment_avoids(P, Segment(a, b)):
            raise PreconditionViolated("a does not see b")
        return Polyline((a, b))
    for p, q in zip(stops, stops[1:]):
        if not _share_edge(P, p, q):
            raise PreconditionViolated(f"walk stops ({p}) and ({q}) do not share an edge")

    interior = component == LocationTag.INTERIOR
    dirs = [_push_direction(P, q, interior) for q in stops]
    eps = Fraction(1)
    for _ in range(HALVING_CAP):
        pushed = [q + d * eps for q, d in zip(stops, dirs)]
        for variant in _variants(a, b, stops, pushed, eps):
            candidate = [a, *variant, b]
            if _sound(P, candidate, component):
                return Polyline(tuple(candidate))
        eps /= 2
        logger.debug("push off boundary: halving epsilon to %s", eps)
    raise HaltingCapExceeded("push off boundary", HALVING_CAP)


# =============================================================================
# NAIVE CONSTRUCTION
# =============================================================================

def _certificate(points, component, bound, case) -> PathCertificate:
    path = points if isinstance(points, Polyline) else Polyline(tuple(points))
    logger.info("path certificate: %s, %d links (bound %d)", case.value, path.links, bound)
    return PathCertificate(path, component, bound, case)


def connect_naive(P: SimplePolygon, a: Point, b: Point, seed: int = DEFAULT_SEED) -> PathCertificate:
    """Route a -> seen edge -> shorter boundary arc -> seen edge -> b, pushed off P."""
    component = _locate_pair(P, a, b)
    bound = naive_bound(P.n)
    if segment_avoids(P, Segment(a, b)):
        return _certificate((a, b), component, bound, CaseTag.NAIVE)

    sa, sb = seen_edge(P, a, seed), seen_edge(P, b, seed)
    if sa.witness == sb.witness:
        stops = [sa.witness]
    elif sa.edge == sb.edge:
        stops = [sa.witness, sb.witness]
    else:
        ends_a, ends_b = P.edge_endpoints(sa.edge), P.edge_endpoints(sb.edge)
        _, u, v = min((cyclic_edge_distance(P, u, v), u, v) for u in ends_a for v in ends_b)
        arc = shorter_arc(P, u, v)
        stops = [sa.witness] + [P.vertex(k) for k in arc.vertex_indices()] + [sb.witness]
    path = push_off_boundary(P, a, stops, b, component)
    return _certificate(path, component, bound, CaseTag.NAIVE)


# =============================================================================
# TIGHT CONSTRUCTION
# =============================================================================

def min_visible_pair(P: SimplePolygon, A: Iterable[int], B: Iterable[int]) -> Tuple[int, int, int]:
    """(a', b', distance) minimizing cyclic edge distance; ties go to the smallest index pair."""
    A, B = sorted(set(A)), sorted(set(B))
    if not A or not B:
        raise PreconditionViolated("visible vertex sets must be nonempty")
    d, i, j = min((cyclic_edge_distance(P, i, j), i, j) for i in A for j in B)
    return i, j, d


def _via_vertex(P, a, b, vertex: int, component, bound, case) -> PathCertificate:
    path = push_off_boundary(P, a, [P.vertex(vertex)], b, component)
    return _certificate(path, component, bound, case)


def _via_arc(P, a, b, A, B, component, bound, case) -> PathCertificate:
    i, j, _ = min_visible_pair(P, A, B)
    arc = shorter_arc(P, i, j)
    stops = [P.vertex(k) for k in arc.vertex_indices()]
    path = push_off_boundary(P, a, stops, b, component)
    return _certificate(path, component, bound, case)


def _far_rays(P, a: Point, b: Point, fa: FreeDirection, fb: FreeDirection, component, bound) -> PathCertificate:
    u = fa.dir
    w = free_direction_near(P, fb, u).dir
    denom = u.cross(w)
    offset = b - a
    lam = offset.cross(w) / denom
    mu = offset.cross(u) / denom
    if lam > 0 and mu > 0:
        return _certificate((a, a + u * lam, b), component, bound, CaseTag.FAR_RAYS)
    lam = Fraction(1)
    for _ in range(DOUBLING_CAP):
        far_a, far_b = a + u * lam, b + w * lam
        if far_a != far_b and segment_avoids(P, Segment(far_a, far_b)):
            return _certificate((a, far_a, far_b, b), component, bound, CaseTag.FAR_RAYS)
        lam *= 2
        logger.debug("far rays: doubling lambda to %s", lam)
    raise HaltingCapExceeded("far ray segment", DOUBLING_CAP)


def _two_link(P, a, b, component, bound, case) -> Optional[PathCertificate]:
    w = common_visible_point(P, a, b)
    if w is None:
        return None
    return _certificate((a, w, b), component, bound, case)


def connect(P: SimplePolygon, a: Point, b: Point, seed: int = DEFAULT_SEED) -> PathCertificate:
    """Certified path with at most floor(n/2) interior / ceil(n/2) exterior links."""
    component = _locate_pair(P, a, b)
    bound = component_bound(P.n, component)
    if segment_avoids(P, Segment(a, b)):
        return _certificate((a, b), component, bound, CaseTag.DIRECT)

    A, B = visible_vertices(P, a), visible_vertices(P, b)
    common = sorted(set(A) & set(B))

    if component == LocationTag.INTERIOR:
        if common:
            cert = _via_vertex(P, a, b, common[0], component, bound, CaseTag.COMMON_VERTEX)
        else:
            cert = _via_arc(P, a, b, A, B, component, bound, CaseTag.BOUNDARY_ARC)
    else:
        fa, fb = free_direction(P, a), free_direction(P, b)
        if fa is not None and fb is not None:
            case = CaseTag.FAR_RAYS
        elif fa is not None or fb is not None:
            case = CaseTag.MIXED
        else:
            case = CaseTag.BOUNDARY_ARC

        if common:
            tag = CaseTag.MIXED if case == CaseTag.MIXED else CaseTag.COMMON_VERTEX
            cert = _via_vertex(P, a, b, common[0], component, bound, tag)
        elif P.n <= 4 or is_convex(P):
            cert = _two_link(P, a, b, component, bound, case)
            if cert is None:
                raise ConstructionFailed("no two-link waypoint in the exterior of a small polygon")
        elif case == CaseTag.FAR_RAYS:
            cert = _far_rays(P, a, b, fa, fb, component, bound)
        else:
            cert = _via_arc(P, a, b, A, B, component, bound, case)

    if cert.links > bound:
        logger.warning("%s produced %d links over bound %d; trying a two-link waypoint",
                       cert.case.value, cert.links, bound)
        fallback = _two_link(P, a, b, component, bound, cert.case)
        if fallback is None:
            raise ConstructionFailed(f"{cert.case.value} path has {cert.links} links, bound {bound}")
        cert = fallback
    return cert
