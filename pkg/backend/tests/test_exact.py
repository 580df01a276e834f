import random
from fractions import Fraction

import pytest

from app.geometry.exact import (
    Point,
    RelationKind,
    Segment,
    Vector,
    line_intersection,
    orient,
    point_on_segment,
    ray_segment_hit,
    scalar,
    segment_relation,
)


def seg(ax, ay, bx, by) -> Segment:
    return Segment(Point(ax, ay), Point(bx, by))


@pytest.mark.parametrize("text, expected", [
    ("3", Fraction(3)),
    ("1/2", Fraction(1, 2)),
    ("-3/6", Fraction(-1, 2)),
    ("0.25", Fraction(1, 4)),
    ("-1.5", Fraction(-3, 2)),
    (" 7 / 4 ", Fraction(7, 4)),
])
def test_scalar_parses_exactly(text, expected):
    assert scalar(text) == expected


@pytest.mark.parametrize("text", ["abc", "1/0", "inf", "nan", ""])
def test_scalar_rejects_non_rationals(text):
    with pytest.raises(ValueError):
        scalar(text)


def test_scalar_refuses_floats():
    with pytest.raises(TypeError):
        scalar(0.5)


def test_point_coerces_and_prints_exactly():
    p = Point("1/2", -3)
    assert p.x == Fraction(1, 2) and p.y == -3
    assert str(p) == "1/2 -3"
    assert p + Vector(1, 1) == Point(Fraction(3, 2), -2)
    assert Point(0, 0).lerp(Point(4, 8), Fraction(1, 4)) == Point(1, 2)


def test_vector_perp_is_counterclockwise():
    assert Vector(1, 0).perp() == Vector(0, 1)
    assert Vector(2, 1).cross(Vector(2, 1).perp()) > 0


def test_degenerate_segment_rejected():
    with pytest.raises(ValueError):
        Segment(Point(1, 1), Point(1, 1))


@pytest.mark.parametrize("a, b, c, expected", [
    ((0, 0), (1, 0), (0, 1), 1),
    ((0, 0), (1, 1), (2, 2), 0),
    ((0, 0), (0, 1), (1, 0), -1),
])
def test_orient(a, b, c, expected):
    assert orient(Point(*a), Point(*b), Point(*c)) == expected


def test_orient_is_exact_for_nearly_collinear_points():
    eps = Fraction(1, 10 ** 30)
    assert orient(Point(0, 0), Point(1, 1), Point(2, 2 + eps)) == 1
    assert orient(Point(0, 0), Point(1, 1), Point(2, 2 - eps)) == -1


def test_segment_relation_cases():
    cross = segment_relation(seg(0, 0, 2, 0), seg(1, -1, 1, 1))
    assert cross.kind == RelationKind.PROPER_CROSS
    assert cross.points == (Point(1, 0),)

    touch = segment_relation(seg(0, 0, 1, 0), seg(1, 0, 1, 1))
    assert touch.kind == RelationKind.TOUCH
    assert touch.points == (Point(1, 0),)

    assert segment_relation(seg(0, 0, 1, 0), seg(0, 1, 1, 1)).kind == RelationKind.DISJOINT
    assert segment_relation(seg(0, 0, 1, 0), seg(2, 0, 3, 0)).kind == RelationKind.DISJOINT

    overlap = segment_relation(seg(0, 0, 2, 0), seg(1, 0, 3, 0))
    assert overlap.kind == RelationKind.OVERLAP
    assert overlap.points == (Point(1, 0), Point(2, 0))


def test_segment_relation_t_junction():
    rel = segment_relation(seg(0, 0, 2, 0), seg(1, 0, 1, 5))
    assert rel.kind == RelationKind.TOUCH
    assert rel.points == (Point(1, 0),)


@pytest.mark.parametrize("p, expected", [
    (Point(Fraction(1, 2), 0), True),
    (Point(2, 0), False),
    (Point(1, 0), True),
    (Point(Fraction(1, 2), Fraction(1, 10 ** 20)), False),
])
def test_point_on_segment(p, expected):
    assert point_on_segment(p, seg(0, 0, 1, 0)) is expected


def test_ray_segment_hit():
    hit = ray_segment_hit(Point(Fraction(1, 2), 2), Vector(0, -1), seg(0, 1, 1, 1))
    assert hit.lam == 1
    assert hit.point == Point(Fraction(1, 2), 1)

    assert ray_segment_hit(Point(Fraction(1, 2), 2), Vector(0, 1), seg(0, 1, 1, 1)) is None

    diagonal = ray_segment_hit(Point(0, 0), Vector(1, 1), seg(2, 0, 0, 2))
    assert diagonal.lam == 1
    assert diagonal.point == Point(1, 1)


def test_ray_along_collinear_segment_hits_near_end():
    hit = ray_segment_hit(Point(0, 0), Vector(1, 0), seg(3, 0, 2, 0))
    assert hit.lam == 2
    assert hit.point == Point(2, 0)


def test_line_intersection():
    assert line_intersection(Point(0, 0), Vector(1, 1), Point(0, 2), Vector(1, -1)) == Point(1, 1)
    assert line_intersection(Point(0, 0), Vector(1, 1), Point(0, 2), Vector(2, 2)) is None


def random_segment(rng: random.Random, span: int = 4) -> Segment:
    while True:
        a = Point(rng.randint(-span, span), rng.randint(-span, span))
        b = Point(rng.randint(-span, span), rng.randint(-span, span))
        if a != b:
            return Segment(a, b)


def test_segment_relation_is_symmetric():
    rng = random.Random(73)
    kinds = set()
    for _ in range(3000):
        s, t = random_segment(rng), random_segment(rng)
        if rng.random() < 0.3:
            # force a collinear pair
            t = Segment(s.a + s.direction * rng.randint(-2, 2), s.a + s.direction * rng.randint(3, 4))
        forward, backward = segment_relation(s, t), segment_relation(t, s)
        assert forward == backward
        kinds.add(forward.kind)
    assert kinds == set(RelationKind)


def test_ray_hit_matches_long_segment():
    rng = random.Random(79)
    for _ in range(3000):
        s = random_segment(rng)
        origin = Point(rng.randint(-4, 4), rng.randint(-4, 4))
        direction = Vector(rng.randint(-3, 3), rng.randint(-3, 3))
        if direction.is_zero():
            continue
        hit = ray_segment_hit(origin, direction, s)
        rel = segment_relation(Segment(origin, origin + direction * 1000), s)
        if rel.kind == RelationKind.DISJOINT:
            assert hit is None
            continue
        assert hit is not None
        assert hit.point == origin + direction * hit.lam
        nearest = min(rel.points, key=lambda p: (p - origin).dot(p - origin))
        assert hit.point == nearest
