from fractions import Fraction

import pytest

from app.errors import CollinearOverlap, DuplicateVertex, EdgeCrossing, TooFewVertices, ValidationError
from app.geometry.exact import Point, Segment, Vector
from app.geometry.polygon import (
    ArcOrientation,
    cyclic_edge_distance,
    generic_direction,
    has_parallel_edges,
    is_convex,
    is_generic,
    orientation,
    polygon_bounding_box,
    polygon_from_pairs,
    shorter_arc,
    signed_area2,
    wedge_directions,
)
from app.geometry.raindrop import LocationTag, classify, get_context


def test_square_is_valid(square):
    assert square.n == 4
    assert square.vertex(5) == Point(1, 0)


def test_edge_i_ends_at_vertex_i(square):
    assert square.edge(0) == Segment(Point(0, 1), Point(0, 0))
    assert square.edge(1) == Segment(Point(0, 0), Point(1, 0))
    assert square.edge_endpoints(0) == (3, 0)


def test_too_few_vertices():
    with pytest.raises(TooFewVertices) as exc:
        polygon_from_pairs([(0, 0), (1, 0)])
    assert exc.value.n == 2


def test_duplicate_vertex_reports_indices():
    with pytest.raises(DuplicateVertex) as exc:
        polygon_from_pairs([(0, 0), (1, 0), (1, 1), (1, 0)])
    assert (exc.value.i, exc.value.j) == (1, 3)


def test_bowtie_crosses():
    with pytest.raises(EdgeCrossing) as exc:
        polygon_from_pairs([(0, 0), (1, 1), (1, 0), (0, 1)])
    assert (exc.value.i, exc.value.j) == (1, 3)


def test_degenerate_triangle_overlaps():
    with pytest.raises(CollinearOverlap):
        polygon_from_pairs([(0, 0), (1, 0), (2, 0)])


def test_vertex_touching_a_far_edge_is_rejected():
    # vertex (1, 0) sits on the edge from (0, 0) to (2, 0)
    with pytest.raises(ValidationError):
        polygon_from_pairs([(0, 0), (2, 0), (2, 2), (1, 0), (0, 2)])


def test_straight_vertex_is_allowed():
    P = polygon_from_pairs([(0, 0), (1, 0), (2, 0), (2, 1), (0, 1)])
    assert P.n == 5


def test_orientation_and_area(square):
    assert signed_area2(square) == 2
    assert orientation(square) == 1
    clockwise = polygon_from_pairs([(0, 0), (0, 1), (1, 1), (1, 0)])
    assert orientation(clockwise) == -1


def test_convexity(square, l_hexagon, triangle, arrowhead):
    assert is_convex(square)
    assert is_convex(triangle)
    assert not is_convex(l_hexagon)
    assert not is_convex(arrowhead)


def test_parallel_edges(square, triangle):
    assert has_parallel_edges(square)
    assert not has_parallel_edges(triangle)


def test_bounding_box(l_hexagon):
    assert polygon_bounding_box(l_hexagon) == (0, 0, 2, 2)


def test_generic_direction(square, triangle):
    v = generic_direction(square)
    assert v == Vector(1, 2)
    assert is_generic(square, v)
    assert is_generic(square, Vector(1, 3))
    assert not is_generic(square, Vector(1, 1))
    assert not is_generic(square, Vector(0, 0))
    assert is_generic(triangle, generic_direction(triangle))


def test_generic_direction_on_corpus(corpus):
    for P in corpus:
        v = generic_direction(P)
        for p in P.vertices:
            for q in P.vertices:
                if p != q:
                    assert v.cross(q - p) != 0


@pytest.mark.parametrize("i, j, expected", [(0, 2, 2), (1, 1, 0), (0, 3, 1)])
def test_cyclic_edge_distance_square(square, i, j, expected):
    assert cyclic_edge_distance(square, i, j) == expected


def test_cyclic_edge_distance_hexagon(l_hexagon):
    assert cyclic_edge_distance(l_hexagon, 0, 4) == 2
    assert l_hexagon.adjacent(0, 5)
    assert not l_hexagon.adjacent(0, 2)


def test_shorter_arc(square, l_hexagon):
    tie = shorter_arc(square, 0, 2)
    assert tie.orientation == ArcOrientation.CCW
    assert tie.vertex_indices() == [0, 1, 2]
    assert tie.edge_count == 2

    back = shorter_arc(l_hexagon, 0, 5)
    assert back.edge_count == 1
    assert back.vertex_indices() == [0, 5]

    empty = shorter_arc(l_hexagon, 2, 2)
    assert empty.edge_count == 0
    assert empty.vertex_indices() == [2]

    assert shorter_arc(l_hexagon, 0, 4).vertex_indices() == [0, 5, 4]


def test_wedge_at_convex_corner(square):
    wedge = wedge_directions(square, 0)
    assert wedge.inward == Vector(1, 1)
    assert wedge.outward == Vector(-1, -1)
    ctx = get_context(square)
    assert classify(ctx, Point(0, 0) + wedge.inward * wedge.epsilon).tag == LocationTag.INTERIOR
    assert classify(ctx, Point(0, 0) + wedge.outward * Fraction(1, 4)).tag == LocationTag.EXTERIOR


def test_wedge_at_reflex_corner(l_hexagon):
    wedge = wedge_directions(l_hexagon, 3)
    assert wedge.outward == Vector(1, 1)
    assert wedge.inward == Vector(-1, -1)


def test_wedge_at_straight_vertex():
    P = polygon_from_pairs([(0, 0), (1, 0), (2, 0), (2, 1), (0, 1)])
    wedge = wedge_directions(P, 1)
    assert wedge.inward.dx == 0 and wedge.inward.dy > 0


def test_wedges_on_corpus(corpus):
    for P in corpus:
        ctx = get_context(P)
        for i in range(P.n):
            wedge = wedge_directions(P, i)
            p = P.vertex(i)
            assert classify(ctx, p + wedge.inward * wedge.epsilon).tag == LocationTag.INTERIOR
            assert classify(ctx, p + wedge.outward * wedge.epsilon).tag == LocationTag.EXTERIOR
