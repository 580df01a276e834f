"""
Extremal Spirals
================
Simple n-gons whose interior and exterior polygonal diameters reach
floor(n/2) and ceil(n/2) at the same time, shipped with witness pairs.

The polygon is a strip of half-width 1/2 wound into a spiral with three arm
headings (east, north-west, south) and pointed ends. Each arm costs an
interior path one link. Between the windings the exterior forms a corridor of
the same length, so a path from the innermost pocket to the far side of the
outer arms winds once per arm. Odd n adds a single vertex pushed out of the
innermost arm's outer side. It blocks the straight run under that arm and
costs the exterior one extra link.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from app.config import DEFAULT_SEED, VERIFY_BUDGET
from app.errors import VerificationFailed
from app.geometry.exact import Point, Vector
from app.geometry.polygon import SimplePolygon, validate
from app.geometry.raindrop import LocationTag, classify, get_context
from app.paths.link_path import Polyline, component_bound
from app.paths.oracle import link_distance, poldiam_sampled

logger = logging.getLogger(__name__)

HEADINGS = (Vector(1, 0), Vector(-1, 1), Vector(0, -1))
HALF_WIDTH = Fraction(1, 2)

# Pocket just above the innermost arm, next to the start of the strip
POCKET = Point(Fraction(1, 4), Fraction(1, 4))


@dataclass(frozen=True)
class ExtremalInstance:
    polygon: SimplePolygon
    interior_witness: Tuple[Point, Point]
    exterior_witness: Tuple[Point, Point]
    claimed_interior: int
    claimed_exterior: int

    @property
    def n(self) -> int:
        return self.polygon.n


# =============================================================================
# CONSTRUCTION
# =============================================================================

def arm_length(i: int) -> int:
    """Length of arm i along its heading; consecutive windings stay two units apart."""
    return 4 + 2 * i + 2 * (i // 3)


def spine(arms: int) -> List[Point]:
    """Centre line of the strip: arms + 1 points, arm i along HEADINGS[i % 3]."""
    points = [Point(0, 0)]
    for i in range(arms):
        points.append(points[-1] + HEADINGS[i % 3] * arm_length(i))
    return points


def _corner(c: Point, u: Vector, w: Vector, side: int) -> Point:
    """Where the offset lines of headings u and w meet at bend c; side +1 is left of travel."""
    bu = side * HALF_WIDTH * u.dot(u)
    bw = side * HALF_WIDTH * w.dot(w)
    det = u.cross(w)
    return c + Vector((bu * w.dx - u.dx * bw) / det, (w.dy * bu - u.dy * bw) / det)


def _strip(bends: int) -> Tuple[List[Point], List[Point]]:
    """Vertices of the pointed strip with the given number of bends, and its spine."""
    c = spine(bends + 1)
    heading = [HEADINGS[i % 3] for i in range(bends + 1)]
    left = [_corner(c[i], heading[i - 1], heading[i], 1) for i in range(1, bends + 1)]
    right = [_corner(c[i], heading[i - 1], heading[i], -1) for i in range(1, bends + 1)]
    return [c[0]] + left + [c[-1]] + right[::-1], c


def _bump(vertices: List[Point], bends: int) -> Point:
    """Extra vertex for odd n, pushed out of the innermost arm's outer side."""
    a, b = vertices[-1], vertices[0]
    reach = Fraction(1) if bends <= 2 else Fraction(1, 8)
    return a.midpoint(b) + (b - a).perp() * reach


def _triangle() -> ExtremalInstance:
    P = validate([Point(0, 0), Point(4, 0), Point(0, 4)])
    return ExtremalInstance(
        P,
        (Point(1, 1), Point(2, 1)),
        (Point(-1, 1), Point(3, 3)),
        1,
        2,
    )


def spiral(n: int) -> ExtremalInstance:
    """The extremal n-gon of the spiral family, n >= 3."""
    if n < 3:
        raise ValueError(f"spiral needs n >= 3, got {n}")
    if n == 3:
        return _triangle()

    bends = n // 2 - 1
    vertices, c = _strip(bends)
    if n % 2:
        vertices = [_bump(vertices, bends)] + vertices
    P = validate(vertices)

    inner = (c[0].lerp(c[1], Fraction(1, 8)), c[-1].lerp(c[-2], Fraction(1, 8)))
    if n == 5:
        # the bump covers the usual spot outside the first arm
        far = Point(Fraction(17, 4), Fraction(-11, 4))
    else:
        heading = HEADINGS[(bends - 1) % 3]
        far = c[bends - 1].midpoint(c[bends]) + heading.perp() * (-2)

    logger.debug("spiral n=%d: %d bends", n, bends)
    return ExtremalInstance(P, inner, (far, POCKET), n // 2, (n + 1) // 2)


# =============================================================================
# VERIFICATION
# =============================================================================

@dataclass(frozen=True)
class WitnessCheck:
    label: str
    pair: Tuple[Point, Point]
    claimed: int
    actual: int
    witness: Polyline

    def __str__(self) -> str:
        return f"{self.label} {self.actual}/{self.claimed}"


@dataclass(frozen=True)
class SampledBound:
    """Largest sampled link distance in one component against its upper bound."""
    label: str
    observed: int
    bound: int
    pair: Tuple[Point, Point]
    samples: int

    def __str__(self) -> str:
        return f"{self.label}-bound {self.observed}<={self.bound} over {self.samples} samples"


@dataclass(frozen=True)
class VerificationReport:
    n: int
    checks: Tuple[WitnessCheck, ...]
    bounds: Tuple[SampledBound, ...] = ()

    def lines(self) -> List[str]:
        return [str(c) for c in self.checks] + [str(b) for b in self.bounds] + ["pass"]

    def __str__(self) -> str:
        return ", ".join(self.lines())


def check_shape(instance: ExtremalInstance):
    """Oracle-free checks: the vertex cycle is simple and each witness lies in its component."""
    P = validate(instance.polygon.vertices)
    ctx = get_context(P)
    for label, pair, tag in (("int", instance.interior_witness, LocationTag.INTERIOR),
                             ("ext", instance.exterior_witness, LocationTag.EXTERIOR)):
        for p in pair:
            loc = classify(ctx, p)
            if loc.tag != tag:
                raise VerificationFailed(f"{label} ({p}) is {loc}", pair, 0, 0)


def verify(instance: ExtremalInstance, max_n: Optional[int] = None, budget: Optional[int] = None,
           seed: int = DEFAULT_SEED) -> VerificationReport:
    """Oracle distances of both witness pairs must equal the claims.

    Also samples `budget` points per component (VERIFY_BUDGET by default) and
    checks that no sampled pair exceeds the floor(n/2) / ceil(n/2) upper
    bounds. A budget of 0 skips the sampled check.
    """
    budget = VERIFY_BUDGET if budget is None else budget
    check_shape(instance)
    P = instance.polygon
    checks = []
    for label, pair, claimed in (("int", instance.interior_witness, instance.claimed_interior),
                                 ("ext", instance.exterior_witness, instance.claimed_exterior)):
        result = link_distance(P, pair[0], pair[1], max_n=max_n)
        logger.info("verify n=%d %s: claimed %d, oracle %d", P.n, label, claimed, result.distance)
        if result.distance != claimed:
            raise VerificationFailed(label, pair, claimed, result.distance)
        checks.append(WitnessCheck(label, pair, claimed, result.distance, result.witness))

    bounds = []
    if budget > 0:
        for label, tag, pair in (("int", LocationTag.INTERIOR, instance.interior_witness),
                                 ("ext", LocationTag.EXTERIOR, instance.exterior_witness)):
            estimate = poldiam_sampled(P, tag, budget, seed, extras=pair, max_n=max_n)
            bound = component_bound(P.n, tag)
            if estimate.lower_bound > bound:
                raise VerificationFailed(f"{label}-bound", estimate.pair, bound, estimate.lower_bound)
            bounds.append(SampledBound(label, estimate.lower_bound, bound, estimate.pair, estimate.samples))

    return VerificationReport(P.n, tuple(checks), tuple(bounds))
