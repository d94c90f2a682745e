"""
Exact rational planar primitives.

Every decision is taken on the sign of an exact ``Fraction`` determinant;
no floating point value ever reaches a predicate.
"""

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple, Union

from untangle.errors import DegenerateTriangle, SharedEndpoint

Number = Union[int, Fraction, str]


class Color(Enum):
    """color of a point"""

    RED = "red"
    BLUE = "blue"


class Orientation(IntEnum):
    """sign of the turn p -> q -> r"""

    CW = -1
    COLLINEAR = 0
    CCW = 1


class Containment(Enum):
    """position of a point relative to a closed triangle"""

    INSIDE = "inside"
    ON_BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Point:
    """a colored point with rational coordinates"""

    x: Fraction
    y: Fraction
    color: Color = Color.RED

    def __post_init__(self):
        # frozen dataclass, coerce through object.__setattr__
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    @property
    def xy(self) -> Tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def same_place(self, other: "Point") -> bool:
        return self.x == other.x and self.y == other.y

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y}, {self.color.value})"


def red(x: Number, y: Number) -> Point:
    return Point(Fraction(x), Fraction(y), Color.RED)


def blue(x: Number, y: Number) -> Point:
    return Point(Fraction(x), Fraction(y), Color.BLUE)


@dataclass(frozen=True)
class Segment:
    """a red-blue segment"""

    red: Point
    blue: Point

    def __post_init__(self):
        if self.red.color is not Color.RED or self.blue.color is not Color.BLUE:
            raise ValueError(f"segment endpoints have wrong colors: {self}")
        if self.red.same_place(self.blue):
            raise ValueError(f"segment endpoints coincide: {self}")

    @property
    def endpoints(self) -> Tuple[Point, Point]:
        return (self.red, self.blue)


@dataclass
class ValidationReport:
    """result of a validation: violations are entries, not exceptions"""

    violations: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, message: str):
        self.violations.append(message)

    def extend(self, other: "ValidationReport"):
        self.violations.extend(other.violations)


def orient(p: Point, q: Point, r: Point) -> Fraction:
    """twice the signed area of the triangle p, q, r (positive when ccw)"""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    return Orientation(_sign(orient(p, q, r)))


def segments_cross(s1: Segment, s2: Segment) -> bool:
    """True iff the two segments meet in exactly one interior point"""
    a, b = s1.endpoints
    c, d = s2.endpoints
    if any(u.same_place(v) for u in (a, b) for v in (c, d)):
        raise SharedEndpoint(f"{s1} and {s2} share an endpoint")
    o1 = _sign(orient(a, b, c))
    o2 = _sign(orient(a, b, d))
    o3 = _sign(orient(c, d, a))
    o4 = _sign(orient(c, d, b))
    return o1 * o2 < 0 and o3 * o4 < 0


def check_general_position(
    points: Sequence[Point], red_on_line: bool = False
) -> ValidationReport:
    """Lists every mixed-color collinear triple and every repeated location.

    With ``red_on_line`` the red points must also lie on ``y = 0`` and the
    blue points strictly above it.
    """
    report = ValidationReport()
    for (i, p), (j, q) in combinations(enumerate(points), 2):
        if p.same_place(q):
            report.add(f"points {i} and {j} coincide at ({p.x}, {p.y})")
    for (i, p), (j, q), (k, r) in combinations(enumerate(points), 3):
        if p.color is q.color is r.color:
            continue
        if orient(p, q, r) == 0:
            report.add(f"points {i}, {j}, {k} are collinear with mixed colors")
    if red_on_line:
        for i, p in enumerate(points):
            if p.color is Color.RED and p.y != 0:
                report.add(f"red point {i} is not on the line y = 0")
            if p.color is Color.BLUE and p.y <= 0:
                report.add(f"blue point {i} is not strictly above y = 0")
    return report


def point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> Containment:
    o = orient(a, b, c)
    if o == 0:
        raise DegenerateTriangle(f"{a}, {b}, {c} are collinear")
    if o < 0:
        b, c = c, b
    signs = (_sign(orient(a, b, p)), _sign(orient(b, c, p)), _sign(orient(c, a, p)))
    if min(signs) < 0:
        return Containment.OUTSIDE
    if min(signs) == 0:
        return Containment.ON_BOUNDARY
    return Containment.INSIDE


def convex_hull(points: Sequence[Point]) -> List[Point]:
    """Hull vertices in counter-clockwise order, starting at the lowest-leftmost
    point. Points lying on a hull edge are not vertices.
    """
    unique = {}
    for p in points:
        unique.setdefault(p.xy, p)
    ordered = [unique[key] for key in sorted(unique)]
    if len(ordered) <= 2:
        return ordered

    def chain(candidates):
        hull = []
        for p in candidates:
            while len(hull) >= 2 and orient(hull[-2], hull[-1], p) <= 0:
                hull.pop()
            hull.append(p)
        return hull

    lower = chain(ordered)
    upper = chain(reversed(ordered))
    return lower[:-1] + upper[:-1]


def convex_position(points: Sequence[Point]) -> bool:
    """True iff every point is a vertex of the convex hull"""
    return len(convex_hull(points)) == len(points)


def _on_closed_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        orient(a, b, p) == 0
        and min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _closed_segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool:
    o1 = _sign(orient(a, b, c))
    o2 = _sign(orient(a, b, d))
    o3 = _sign(orient(c, d, a))
    o4 = _sign(orient(c, d, b))
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        _on_closed_segment(c, a, b)
        or _on_closed_segment(d, a, b)
        or _on_closed_segment(a, c, d)
        or _on_closed_segment(b, c, d)
    )


def _in_closed_hull(p: Point, hull: Sequence[Point]) -> bool:
    if len(hull) == 1:
        return p.same_place(hull[0])
    if len(hull) == 2:
        return _on_closed_segment(p, hull[0], hull[1])
    return all(
        orient(hull[i], hull[(i + 1) % len(hull)], p) >= 0 for i in range(len(hull))
    )


def _edges(hull: Sequence[Point]):
    if len(hull) == 1:
        return [(hull[0], hull[0])]
    if len(hull) == 2:
        return [(hull[0], hull[1])]
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def hulls_disjoint(first: Sequence[Point], second: Sequence[Point]) -> bool:
    """True iff the closed convex hulls of the two point sets do not meet"""
    a = convex_hull(first)
    b = convex_hull(second)
    if any(_in_closed_hull(p, b) for p in a) or any(_in_closed_hull(p, a) for p in b):
        return False
    for p, q in _edges(a):
        for r, s in _edges(b):
            if _closed_segments_meet(p, q, r, s):
                return False
    return True
