"""Shared polygons and seeded random corpora."""

import math
import random
from fractions import Fraction
from typing import Callable, List

import pytest

from app.errors import ValidationError
from app.geometry.exact import Point, RelationKind, Segment, segment_relation
from app.geometry.polygon import SimplePolygon, polygon_from_pairs, polygon_bounding_box, validate
from app.geometry.raindrop import LocationTag, classify, get_context

SQUARE_TEXT = "4\n0 0\n1 0\n1 1\n0 1\n"
L_HEXAGON_TEXT = "6\n0 0\n2 0\n2 1\n1 1\n1 2\n0 2\n"


@pytest.fixture
def square() -> SimplePolygon:
    return polygon_from_pairs([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def l_hexagon() -> SimplePolygon:
    return polygon_from_pairs([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])


@pytest.fixture
def triangle() -> SimplePolygon:
    return polygon_from_pairs([(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def arrowhead() -> SimplePolygon:
    """Nonconvex quadrilateral; its reflex vertex (2, 1) points into the notch below."""
    return polygon_from_pairs([(0, 0), (2, 1), (4, 0), (2, 3)])


@pytest.fixture
def c_shape() -> SimplePolygon:
    """Octagon shaped like a C, opening to the right."""
    return polygon_from_pairs([(0, 0), (3, 0), (3, 1), (1, 1), (1, 2), (3, 2), (3, 3), (0, 3)])


def star_polygon(rng: random.Random, n: int) -> SimplePolygon:
    """Random polygon star-shaped around the origin, with rational vertices."""
    while True:
        dirs = set()
        while len(dirs) < n:
            dx, dy = rng.randint(-9, 9), rng.randint(-9, 9)
            if dx == 0 and dy == 0:
                continue
            g = math.gcd(dx, dy)
            dirs.add((dx // g, dy // g))
        ordered = sorted(dirs, key=lambda d: math.atan2(d[1], d[0]))
        angles = [math.atan2(dy, dx) for dx, dy in ordered]
        gaps = [(angles[(i + 1) % n] - angles[i]) % (2 * math.pi) for i in range(n)]
        if max(gaps) >= math.pi - 1e-9:
            continue
        vertices = []
        for dx, dy in ordered:
            r = Fraction(rng.randint(3, 12), 4)
            vertices.append(Point(dx * r, dy * r))
        try:
            return validate(vertices)
        except ValidationError:
            continue


def untangle(points: List[Point], max_swaps: int) -> bool:
    """Reverse runs between properly crossing edges until none cross; False if it gives up."""
    for _ in range(max_swaps):
        crossing = _first_crossing(points)
        if crossing is None:
            return True
        i, j = crossing
        points[i + 1:j + 1] = points[i + 1:j + 1][::-1]
    return False


def _first_crossing(points: List[Point]):
    n = len(points)
    edges = [Segment(points[i], points[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if segment_relation(edges[i], edges[j]).kind == RelationKind.PROPER_CROSS:
                return i, j
    return None


def lattice_polygon(rng: random.Random, n: int) -> SimplePolygon:
    """Random simple polygon through n lattice points, untangled by 2-opt moves.

    The result is usually not star-shaped.
    """
    side = 2 * n + 4
    while True:
        cells = list(dict.fromkeys((rng.randint(0, side), rng.randint(0, side)) for _ in range(2 * n)))
        if len(cells) < n:
            continue
        cells = cells[:n]
        rng.shuffle(cells)
        points = [Point(x, y) for x, y in cells]
        if not untangle(points, 8 * n * n):
            continue
        try:
            return validate(points)
        except ValidationError:
            continue


def sample_points(rng: random.Random, P: SimplePolygon, count: int, denominator: int = 7) -> List[Point]:
    """Seeded rational points in P's bounding box grown by 1 on each side."""
    x0, y0, x1, y1 = polygon_bounding_box(P)
    x0, y0, x1, y1 = x0 - 1, y0 - 1, x1 + 1, y1 + 1
    out = []
    for _ in range(count):
        tx = Fraction(rng.randint(0, 64 * denominator), 64 * denominator)
        ty = Fraction(rng.randint(0, 64 * denominator), 64 * denominator)
        out.append(Point(x0 + (x1 - x0) * tx, y0 + (y1 - y0) * ty))
    return out


def component_pairs(rng: random.Random, P: SimplePolygon, tag: LocationTag, count: int):
    """Up to `count` pairs of distinct sampled points lying in the same component."""
    ctx = get_context(P)
    pool = [p for p in sample_points(rng, P, 12 * count) if classify(ctx, p).tag == tag]
    pool = list(dict.fromkeys(pool))
    return [(pool[2 * k], pool[2 * k + 1]) for k in range(min(count, len(pool) // 2))]


@pytest.fixture(scope="session")
def corpus() -> List[SimplePolygon]:
    rng = random.Random(7)
    return [star_polygon(rng, n) for n in (3, 4, 5, 5, 6, 6, 7, 8, 9, 10)]


@pytest.fixture(scope="session")
def lattice_corpus() -> List[SimplePolygon]:
    """50 non-star polygons with 6 to 14 vertices."""
    rng = random.Random(41)
    return [lattice_polygon(rng, rng.randint(6, 14)) for _ in range(50)]


@pytest.fixture(scope="session")
def lattice_corpus_20() -> List[SimplePolygon]:
    """50 non-star polygons with 4 to 20 vertices."""
    rng = random.Random(43)
    return [lattice_polygon(rng, rng.randint(4, 20)) for _ in range(50)]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(2024)


@pytest.fixture
def points_in() -> Callable[..., List[Point]]:
    return sample_points


@pytest.fixture
def pairs_in() -> Callable[..., list]:
    return component_pairs
