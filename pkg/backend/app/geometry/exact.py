"""
Exact Geometry Primitives
=========================
Rational scalars, points, vectors and segments with exact orientation,
intersection and ray predicates. Nothing here ever rounds.
"""

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

_RATIO = re.compile(r"^\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*$")


def scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction, "p/q" or finite decimal string into an exact Scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    text = str(value).strip()
    match = _RATIO.match(text)
    if match:
        den = int(match.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(match.group(1)), den)
    try:
        dec = Decimal(text)
    except InvalidOperation:
        raise ValueError(f"not a rational number: {text!r}") from None
    if not dec.is_finite():
        raise ValueError(f"not a finite number: {text!r}")
    return Fraction(dec)


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


@dataclass(frozen=True, slots=True)
class Vector:
    dx: Fraction
    dy: Fraction

    def __post_init__(self):
        if type(self.dx) is not Fraction:
            object.__setattr__(self, "dx", scalar(self.dx))
        if type(self.dy) is not Fraction:
            object.__setattr__(self, "dy", scalar(self.dy))

    def __add__(self, other: "Vector") -> "Vector":
        return Vector(self.dx + other.dx, self.dy + other.dy)

    def __sub__(self, other: "Vector") -> "Vector":
        return Vector(self.dx - other.dx, self.dy - other.dy)

    def __neg__(self) -> "Vector":
        return Vector(-self.dx, -self.dy)

    def __mul__(self, k: ScalarLike) -> "Vector":
        k = scalar(k)
        return Vector(self.dx * k, self.dy * k)

    __rmul__ = __mul__

    def cross(self, other: "Vector") -> Fraction:
        return self.dx * other.dy - self.dy * other.dx

    def dot(self, other: "Vector") -> Fraction:
        return self.dx * other.dx + self.dy * other.dy

    def perp(self) -> "Vector":
        """Counterclockwise quarter turn."""
        return Vector(-self.dy, self.dx)

    def rotated(self, t: Fraction) -> "Vector":
        """Rotate counterclockwise by the angle whose tangent is t (length grows, direction exact)."""
        return Vector(self.dx - t * self.dy, self.dy + t * self.dx)

    def is_zero(self) -> bool:
        return self.dx == 0 and self.dy == 0

    def parallel_to(self, other: "Vector") -> bool:
        return self.cross(other) == 0


@dataclass(frozen=True, slots=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if type(self.x) is not Fraction:
            object.__setattr__(self, "x", scalar(self.x))
        if type(self.y) is not Fraction:
            object.__setattr__(self, "y", scalar(self.y))

    def __sub__(self, other: "Point") -> Vector:
        return Vector(self.x - other.x, self.y - other.y)

    def __add__(self, v: Vector) -> "Point":
        return Point(self.x + v.dx, self.y + v.dy)

    def midpoint(self, other: "Point") -> "Point":
        return Point((self.x + other.x) / 2, (self.y + other.y) / 2)

    def lerp(self, other: "Point", t: Fraction) -> "Point":
        """Point (1-t)*self + t*other."""
        return Point(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)

    def key(self) -> Tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def __str__(self) -> str:
        return f"{self.x} {self.y}"


@dataclass(frozen=True, slots=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"degenerate segment at ({self.a})")

    @property
    def direction(self) -> Vector:
        return self.b - self.a

    def midpoint(self) -> Point:
        return self.a.midpoint(self.b)

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)


# =============================================================================
# PREDICATES
# =============================================================================

def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of (b - a) x (c - a): +1 counterclockwise, -1 clockwise, 0 collinear."""
    value = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (value > 0) - (value < 0)


def point_on_segment(p: Point, s: Segment) -> bool:
    """True iff p lies on the closed segment s."""
    if orient(s.a, s.b, p) != 0:
        return False
    return (min(s.a.x, s.b.x) <= p.x <= max(s.a.x, s.b.x)
            and min(s.a.y, s.b.y) <= p.y <= max(s.a.y, s.b.y))


class RelationKind(str, Enum):
    DISJOINT = "disjoint"
    PROPER_CROSS = "proper-cross"
    TOUCH = "touch"
    OVERLAP = "overlap"


@dataclass(frozen=True)
class Relation:
    """Exact description of s ∩ t: one point for crosses and touches, two endpoints for overlaps."""
    kind: RelationKind
    points: Tuple[Point, ...] = ()


def line_intersection(p1: Point, d1: Vector, p2: Point, d2: Vector) -> Optional[Point]:
    """Intersection of the lines p1 + s*d1 and p2 + t*d2, or None when parallel."""
    denom = d1.cross(d2)
    if denom == 0:
        return None
    s = (p2 - p1).cross(d2) / denom
    return p1 + d1 * s


def segment_relation(s: Segment, t: Segment) -> Relation:
    d1 = orient(t.a, t.b, s.a)
    d2 = orient(t.a, t.b, s.b)
    if d1 == 0 and d2 == 0:
        s_lo, s_hi = sorted((s.a, s.b), key=Point.key)
        t_lo, t_hi = sorted((t.a, t.b), key=Point.key)
        lo = max(s_lo, t_lo, key=Point.key)
        hi = min(s_hi, t_hi, key=Point.key)
        if lo.key() > hi.key():
            return Relation(RelationKind.DISJOINT)
        if lo == hi:
            return Relation(RelationKind.TOUCH, (lo,))
        return Relation(RelationKind.OVERLAP, (lo, hi))
    d3 = orient(s.a, s.b, t.a)
    d4 = orient(s.a, s.b, t.b)
    if d1 * d2 > 0 or d3 * d4 > 0:
        return Relation(RelationKind.DISJOINT)
    if d1 == 0:
        return Relation(RelationKind.TOUCH, (s.a,))
    if d2 == 0:
        return Relation(RelationKind.TOUCH, (s.b,))
    if d3 == 0:
        return Relation(RelationKind.TOUCH, (t.a,))
    if d4 == 0:
        return Relation(RelationKind.TOUCH, (t.b,))
    hit = line_intersection(s.a, s.direction, t.a, t.direction)
    return Relation(RelationKind.PROPER_CROSS, (hit,))


@dataclass(frozen=True)
class RayHit:
    lam: Fraction
    point: Point


def ray_segment_hit(origin: Point, direction: Vector, s: Segment) -> Optional[RayHit]:
    """Smallest lam >= 0 with origin + lam*direction on s, if any."""
    if direction.is_zero():
        raise ValueError("ray direction must be nonzero")
    e = s.direction
    w = s.a - origin
    denom = direction.cross(e)
    if denom != 0:
        lam = w.cross(e) / denom
        mu = w.cross(direction) / denom
        if lam < 0 or mu < 0 or mu > 1:
            return None
        return RayHit(lam, origin + direction * lam)
    if w.cross(direction) != 0:
        return None
    # collinear: project both endpoints onto the ray
    norm = direction.dot(direction)
    la = w.dot(direction) / norm
    lb = (s.b - origin).dot(direction) / norm
    lo, hi = min(la, lb), max(la, lb)
    if hi < 0:
        return None
    lam = max(lo, Fraction(0))
    return RayHit(lam, origin + direction * lam)


def bounding_box(points) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """(min_x, min_y, max_x, max_y) of a nonempty point collection."""
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return min(xs), min(ys), max(xs), max(ys)
