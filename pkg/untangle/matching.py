"""
The matching configuration, the flip operation and pair states.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, NamedTuple, Sequence, Set, Tuple

import mpmath

from untangle import constants
from untangle.errors import (
    NotCrossing,
    NotRedOnLine,
    SegmentStillCrossing,
    SplitAmbiguous,
    TiedBlueHeights,
)
from untangle.geometry import (
    Color,
    Point,
    Segment,
    ValidationReport,
    check_general_position,
    convex_position,
    hulls_disjoint,
    orient,
    segments_cross,
)


class PairState(Enum):
    """state of a pair of segments"""

    X = "X"  # crossing
    H = "H"  # non-crossing, endpoints in convex position
    T = "T"  # non-crossing, one endpoint inside the triangle of the others


class Flip(NamedTuple):
    """a flip of the segments of reds ``i`` and ``j``"""

    i: int
    j: int

    def normalized(self) -> "Flip":
        return Flip(min(self.i, self.j), max(self.i, self.j))


@dataclass(frozen=True)
class Matching:
    """Red and blue point arrays with ``mate[i]`` the blue matched to red ``i``.

    The segment id is its red index: flips only permute blue partners.
    """

    reds: Tuple[Point, ...]
    blues: Tuple[Point, ...]
    mate: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "reds", tuple(self.reds))
        object.__setattr__(self, "blues", tuple(self.blues))
        object.__setattr__(self, "mate", tuple(self.mate))
        if not len(self.reds) == len(self.blues) == len(self.mate):
            raise ValueError("reds, blues and mate must have the same length")
        if sorted(self.mate) != list(range(len(self.mate))):
            raise ValueError(f"mate is not a permutation: {self.mate}")
        if any(p.color is not Color.RED for p in self.reds):
            raise ValueError("reds contains a blue point")
        if any(p.color is not Color.BLUE for p in self.blues):
            raise ValueError("blues contains a red point")

    @property
    def n(self) -> int:
        return len(self.reds)

    @property
    def points(self) -> Tuple[Point, ...]:
        return self.reds + self.blues

    def segment(self, i: int) -> Segment:
        return Segment(self.reds[i], self.blues[self.mate[i]])

    def segments(self) -> List[Segment]:
        return [self.segment(i) for i in range(self.n)]

    def with_mate(self, mate: Sequence[int]) -> "Matching":
        return Matching(self.reds, self.blues, tuple(mate))

    def fingerprint(self) -> Tuple:
        """hashable key over the points and the pairing"""
        return (
            tuple(p.xy for p in self.reds),
            tuple(p.xy for p in self.blues),
            self.mate,
        )

    def restrict(self, indices: Sequence[int]) -> "Matching":
        """the sub-matching made of the segments of the given reds"""
        blue_ids = [self.mate[i] for i in indices]
        return Matching(
            tuple(self.reds[i] for i in indices),
            tuple(self.blues[b] for b in blue_ids),
            tuple(range(len(indices))),
        )

    def is_red_on_line(self) -> bool:
        return all(p.y == 0 for p in self.reds) and all(p.y > 0 for p in self.blues)

    def validate(self, red_on_line: bool = False) -> ValidationReport:
        return check_general_position(self.points, red_on_line=red_on_line)

    def crosses(self, i: int, j: int) -> bool:
        return segments_cross(self.segment(i), self.segment(j))


def pair_state(matching: Matching, i: int, j: int) -> PairState:
    if i == j:
        raise ValueError("a pair needs two distinct segments")
    if matching.crosses(i, j):
        return PairState.X
    s, t = matching.segment(i), matching.segment(j)
    if convex_position(s.endpoints + t.endpoints):
        return PairState.H
    return PairState.T


def apply_flip(matching: Matching, flip: Flip) -> Matching:
    i, j = flip
    if i == j or not matching.crosses(i, j):
        raise NotCrossing(i, j)
    mate = list(matching.mate)
    mate[i], mate[j] = mate[j], mate[i]
    return matching.with_mate(mate)


def crossing_pairs(matching: Matching) -> Set[Tuple[int, int]]:
    return {
        (i, j) for i, j in combinations(range(matching.n), 2) if matching.crosses(i, j)
    }


def crossing_count(matching: Matching) -> int:
    return len(crossing_pairs(matching))


def is_crossing_free(matching: Matching) -> bool:
    return not any(
        matching.crosses(i, j) for i, j in combinations(range(matching.n), 2)
    )


def state_matrix(matching: Matching) -> Dict[Tuple[int, int], PairState]:
    return {
        (i, j): pair_state(matching, i, j)
        for i, j in combinations(range(matching.n), 2)
    }


def _to_mpf(value: Fraction):
    return mpmath.mpf(value.numerator) / value.denominator


def total_length(matching: Matching):
    """Sum of the euclidean segment lengths as an mpmath float.

    Diagnostic only: sums of square roots are compared with a tolerance.
    """
    with mpmath.workprec(constants.LENGTH_PRECISION_BITS):
        total = mpmath.mpf(0)
        for segment in matching.segments():
            dx = segment.red.x - segment.blue.x
            dy = segment.red.y - segment.blue.y
            total += mpmath.sqrt(_to_mpf(dx * dx + dy * dy))
        return total


def nonH_count(matching: Matching) -> int:  # pylint: disable=invalid-name
    return sum(1 for state in state_matrix(matching).values() if state is not PairState.H)


def top_segment(matching: Matching) -> int:
    """red index whose blue mate is strictly the highest"""
    if not matching.is_red_on_line():
        raise NotRedOnLine("top segment is only defined on red-on-a-line matchings")
    heights = [matching.blues[matching.mate[i]].y for i in range(matching.n)]
    top = max(heights)
    winners = [i for i, h in enumerate(heights) if h == top]
    if len(winners) > 1:
        raise TiedBlueHeights(f"segments {winners} share the top blue height {top}")
    return winners[0]


@dataclass(frozen=True)
class SidePart:
    """a sub-matching together with the red indices it came from"""

    matching: Matching
    indices: Tuple[int, ...]


def side_split(matching: Matching, i: int) -> Tuple[SidePart, SidePart]:
    """Splits the other segments by the side of the line through segment ``i``."""
    if not matching.is_red_on_line():
        raise NotRedOnLine("side split needs a red-on-a-line matching")
    others = [j for j in range(matching.n) if j != i]
    if any(matching.crosses(i, j) for j in others):
        raise SegmentStillCrossing(f"segment {i} still crosses another segment")
    line = matching.segment(i)
    left, right = [], []
    for j in others:
        s = matching.segment(j)
        signs = {
            orient(line.red, line.blue, s.red) > 0,
            orient(line.red, line.blue, s.blue) > 0,
        }
        if len(signs) > 1:
            raise SplitAmbiguous(f"segment {j} has endpoints on both sides of {i}")
        (left if signs.pop() else right).append(j)
    return (
        SidePart(matching.restrict(left), tuple(left)),
        SidePart(matching.restrict(right), tuple(right)),
    )


def hull_components(
    matching: Matching, indices: Sequence[int] = None
) -> List[Tuple[int, ...]]:
    """Groups segments until the groups have pairwise disjoint convex hulls.

    Two groups whose hulls meet must share a part in any disjoint-hull
    partition, so merging to a fixpoint yields the finest such partition.
    """
    if indices is None:
        indices = range(matching.n)
    groups = [[j] for j in indices]

    def points_of(group):
        return [p for j in group for p in matching.segment(j).endpoints]

    merged = True
    while merged:
        merged = False
        for a, b in combinations(range(len(groups)), 2):
            if not hulls_disjoint(points_of(groups[a]), points_of(groups[b])):
                groups[a].extend(groups.pop(b))
                merged = True
                break
    return sorted(tuple(sorted(group)) for group in groups)


def is_free(matching: Matching, i: int) -> bool:
    """True when segment ``i`` crosses nothing and misses the hull of every
    component of the disjoint-hull decomposition of the other segments."""
    others = [j for j in range(matching.n) if j != i]
    if any(matching.crosses(i, j) for j in others):
        return False
    segment = list(matching.segment(i).endpoints)
    for component in hull_components(matching, others):
        points = [p for j in component for p in matching.segment(j).endpoints]
        if not hulls_disjoint(segment, points):
            return False
    return True
