from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from untangle.errors import DegenerateTriangle, SharedEndpoint
from untangle.generators import make_butterfly
from untangle.geometry import (
    Containment,
    Orientation,
    Point,
    Segment,
    blue,
    check_general_position,
    convex_hull,
    convex_position,
    hulls_disjoint,
    orientation,
    point_in_triangle,
    red,
    segments_cross,
)

coords = st.fractions(min_value=-50, max_value=50, max_denominator=7)
points = st.builds(lambda x, y: red(x, y), coords, coords)


def test_orientation():
    assert orientation(red(0, 0), red(1, 0), red(0, 1)) is Orientation.CCW
    assert orientation(red(0, 0), red(1, 1), red(2, 2)) is Orientation.COLLINEAR
    assert orientation(red(0, 0), red(0, 1), red(1, 0)) is Orientation.CW


@given(p=points, q=points, r=points)
def test_orientation_antisymmetric(p, q, r):
    assert orientation(p, q, r) == -orientation(p, r, q)


def test_segments_cross():
    assert segments_cross(Segment(red(0, 0), blue(2, 2)), Segment(red(0, 2), blue(2, 0)))
    assert not segments_cross(Segment(red(0, 0), blue(1, 0)), Segment(red(0, 1), blue(1, 1)))


def test_segments_touching_do_not_cross():
    # the endpoint of the second segment lies inside the first
    assert not segments_cross(Segment(red(0, 0), blue(2, 0)), Segment(red(1, 0), blue(1, 3)))


def test_segments_cross_shared_endpoint():
    with pytest.raises(SharedEndpoint):
        segments_cross(Segment(red(0, 0), blue(2, 2)), Segment(red(2, 2), blue(3, 0)))


def test_butterfly_inner_segments_cross():
    butterfly = make_butterfly(3)
    # innermost segments of the two stars
    right, left = 3, 2
    assert segments_cross(butterfly.segment(right), butterfly.segment(left))


@settings(max_examples=200)
@given(a=points, b=points, c=points, d=points)
def test_segments_cross_symmetric(a, b, c, d):
    s1 = Segment(a, blue(b.x, b.y)) if not a.same_place(b) else None
    s2 = Segment(c, blue(d.x, d.y)) if not c.same_place(d) else None
    if s1 is None or s2 is None:
        return
    if {a.xy, b.xy} & {c.xy, d.xy}:
        return
    assert segments_cross(s1, s2) == segments_cross(s2, s1)


def test_general_position():
    report = check_general_position(make_butterfly(3).points, red_on_line=True)
    assert report.valid
    report = check_general_position([red(0, 0), blue(1, 1), red(2, 2)])
    assert not report.valid
    assert len(report.violations) == 1
    assert check_general_position([]).valid


def test_general_position_red_on_line():
    report = check_general_position([red(0, 1), blue(3, 0)], red_on_line=True)
    assert len(report.violations) == 2


def test_point_in_triangle():
    a, b, c = red(0, 0), red(3, 0), red(0, 3)
    assert point_in_triangle(red(1, 1), a, b, c) is Containment.INSIDE
    assert point_in_triangle(red(0, 0), a, b, c) is Containment.ON_BOUNDARY
    assert point_in_triangle(red(5, 5), a, b, c) is Containment.OUTSIDE
    # clockwise corners give the same answer
    assert point_in_triangle(red(1, 1), a, c, b) is Containment.INSIDE
    with pytest.raises(DegenerateTriangle):
        point_in_triangle(red(1, 1), a, red(1, 1), red(2, 2))


def test_convex_hull():
    square = [red(0, 0), red(2, 0), red(2, 2), red(0, 2)]
    hull = convex_hull(square + [red(1, 1)])
    assert {p.xy for p in hull} == {p.xy for p in square}
    assert len(convex_hull([red(0, 0), red(1, 5)])) == 2
    assert convex_position(square)
    assert not convex_position(square + [red(1, 1)])


def test_butterfly_blue_hull():
    butterfly = make_butterfly(3)
    hull = convex_hull(butterfly.blues)
    expected = {(-3, 3), (-1, 1), (1, 1), (3, 3)}
    assert {(int(p.x), int(p.y)) for p in hull} == expected


@given(st.lists(points, min_size=1, max_size=12), st.randoms(), st.integers(1, 5))
def test_convex_hull_invariance(pts, rng, factor):
    hull = {p.xy for p in convex_hull(pts)}
    shuffled = list(pts)
    rng.shuffle(shuffled)
    assert {p.xy for p in convex_hull(shuffled)} == hull
    scaled = [red(p.x * factor, p.y * factor) for p in pts]
    assert {p.xy for p in convex_hull(scaled)} == {(x * factor, y * factor) for x, y in hull}


def test_hulls_disjoint():
    left = [red(0, 0), red(1, 0), red(0, 1)]
    right = [red(5, 5), red(6, 5), red(5, 6)]
    assert hulls_disjoint(left, right)
    assert not hulls_disjoint(left, [red(Fraction(1, 4), Fraction(1, 4)), red(9, 9)])


def test_point_coerces_to_fraction():
    p = Point(1, "1/3")
    assert p.y == Fraction(1, 3)
