"""
Fences: convex matchings whose every flip removes exactly one crossing.

Points carry labels ``("p", i)`` or ``("q", i)`` with ``i`` in
``1, 3, 4, ..., 2m, 2m + 2``; the labels are laid counter-clockwise as
``q_{2m+2}, q_{2m}, ..., q_3, q_1, p_1, p_3, ..., p_{2m}, p_{2m+2}``.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from untangle.errors import (
    AuditFailure,
    NotDerivedFence,
    UnclassifiableCrossing,
    WrongPointSet,
)
from untangle.geometry import Color, Point, convex_position
from untangle.logger import logger
from untangle.matching import Matching, crossing_count

Label = Tuple[str, int]


class CrossingKind(Enum):
    END = "end"
    MIDDLE = "middle"


def column(index: int) -> int:
    """column ``k`` holds the indices ``2k - 1`` and ``2k``"""
    return (index + 1) // 2


def fence_indices(m: int) -> List[int]:
    return [1] + list(range(3, 2 * m + 1)) + [2 * m + 2]


def label_color(label: Label) -> Color:
    return Color.RED if label[1] % 4 in (1, 2) else Color.BLUE


@dataclass(frozen=True)
class FenceDescriptor:
    m: int
    red_labels: Tuple[Label, ...]
    blue_labels: Tuple[Label, ...]
    points: Tuple[Tuple[Label, Point], ...]

    @property
    def columns(self) -> Dict[int, List[Label]]:
        result: Dict[int, List[Label]] = {}
        for label, _ in self.points:
            result.setdefault(column(label[1]), []).append(label)
        return result

    def partners(self, matching: Matching) -> Dict[Label, Label]:
        """the label matched to every label, in both directions"""
        result = {}
        for i in range(matching.n):
            r, b = self.red_labels[i], self.blue_labels[matching.mate[i]]
            result[r] = b
            result[b] = r
        return result

    def segment_labels(self, matching: Matching, i: int) -> Tuple[Label, Label]:
        return self.red_labels[i], self.blue_labels[matching.mate[i]]


def counter_clockwise_labels(m: int) -> List[Label]:
    indices = fence_indices(m)
    return [("q", i) for i in reversed(indices)] + [("p", i) for i in indices]


def make_fence(m: int) -> Tuple[Matching, FenceDescriptor]:
    """The m-fence realised on the parabola y = x^2 at consecutive integer
    abscissas, so the counter-clockwise label order is the x order."""
    if m < 2:
        raise ValueError("a fence needs m >= 2")
    labelled = []
    for position, label in enumerate(counter_clockwise_labels(m)):
        x = position - 2 * m
        labelled.append((label, Point(x, x * x, label_color(label))))
    red_labels = tuple(label for label, p in labelled if p.color is Color.RED)
    blue_labels = tuple(label for label, p in labelled if p.color is Color.BLUE)
    by_label = dict(labelled)
    blue_index = {label: k for k, label in enumerate(blue_labels)}

    # segments p_i q_{i+3} and q_i p_{i+3} for odd i
    pairs = {}
    for i in range(1, 2 * m, 2):
        for a, b in ((("p", i), ("q", i + 3)), (("q", i), ("p", i + 3))):
            pairs[a] = b
            pairs[b] = a
    mate = [blue_index[pairs[label]] for label in red_labels]
    matching = Matching(
        [by_label[label] for label in red_labels],
        [by_label[label] for label in blue_labels],
        mate,
    )
    descriptor = FenceDescriptor(m, red_labels, blue_labels, tuple(labelled))
    _audit(matching, descriptor)
    return matching, descriptor


def _audit(matching: Matching, descriptor: FenceDescriptor):
    problems = []
    if not convex_position(matching.points):
        problems.append("points are not in convex position")
    if crossing_count(matching) != fence_lower_bound(descriptor.m):
        problems.append(f"{crossing_count(matching)} crossings")
    if not is_derived_fence(matching, descriptor):
        problems.append("fence is not a derived fence")
    if problems:
        logger.warning("%s-fence audit failed: %s", descriptor.m, problems)
        raise AuditFailure("; ".join(problems))


def fence_lower_bound(m: int) -> int:
    return 3 * m - 2


def _check_point_set(matching: Matching, descriptor: FenceDescriptor):
    expected = dict(descriptor.points)
    reds = tuple(expected[label].xy for label in descriptor.red_labels)
    blues = tuple(expected[label].xy for label in descriptor.blue_labels)
    if tuple(p.xy for p in matching.reds) != reds or tuple(
        p.xy for p in matching.blues
    ) != blues:
        raise WrongPointSet("matching is not built on the fence point set")


def _statement(partners: Dict[Label, Label], side: str, k: int) -> int:
    """1 or 2 for the statement holding at column ``k`` on ``side``, else 0"""
    odd = column(partners[(side, 2 * k - 1)][1])
    even = column(partners[(side, 2 * k)][1])
    if odd == k - 1 and even == k + 1:
        return 1
    if odd == k + 1 and even == k - 1:
        return 2
    return 0


def is_derived_fence(matching: Matching, descriptor: FenceDescriptor) -> bool:
    _check_point_set(matching, descriptor)
    partners = descriptor.partners(matching)
    return all(
        _statement(partners, side, k)
        for k in range(2, descriptor.m + 1)
        for side in ("p", "q")
    )


def classify_crossing(
    matching: Matching, descriptor: FenceDescriptor, i: int, j: int
) -> CrossingKind:
    if not is_derived_fence(matching, descriptor):
        raise NotDerivedFence("crossings are classified on derived fences only")
    if not matching.crosses(i, j):
        raise ValueError(f"segments {i} and {j} do not cross")
    partners = descriptor.partners(matching)
    first = descriptor.segment_labels(matching, i)
    second = descriptor.segment_labels(matching, j)
    for side in ("p", "q"):
        for k in range(2, descriptor.m + 1):
            ends = {(side, 2 * k - 1), (side, 2 * k)}
            if (
                _statement(partners, side, k) == 2
                and len(ends & set(first)) == 1
                and len(ends & set(second)) == 1
            ):
                return CrossingKind.END

    def by_side(labels):
        return dict(labels) if labels[0][0] != labels[1][0] else None

    a, b = by_side(first), by_side(second)
    if a is not None and b is not None:
        if column(a["p"]) == column(b["q"]) and column(a["q"]) == column(b["p"]):
            return CrossingKind.MIDDLE
    raise UnclassifiableCrossing(f"crossing of {first} and {second}")
