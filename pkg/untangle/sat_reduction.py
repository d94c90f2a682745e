"""
Compiler from rectilinear planar monotone 3-SAT to red-blue matchings whose
flip distance encodes satisfiability, with enumeration-backed gadget audits.

Every gadget is a labelled point set. A gadget state is a list of
``(red label, blue label)`` pairs turned into a :class:`Matching` by
:func:`labelled_matching`. Clause gadgets are laid out in the frame of a
positive clause and mirrored across the x-axis for negative ones; variable
gadgets are symmetric about the x-axis, so both polarities share anchors.
"""

import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import partial
from itertools import product
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from untangle import constants
from untangle.engine import Mate, shortest_untangle
from untangle.enumerator import SequenceEnumerator
from untangle.errors import (
    AssemblyAuditFailed,
    ConstraintUnsatisfied,
    DegenerateRectangle,
)
from untangle.formula import (
    Embedding,
    Polarity,
    Rect,
    RpmFormula,
    derive_embedding,
    validate_embedding,
    variable_rect,
)
from untangle.geometry import (
    Color,
    Containment,
    Point,
    Segment,
    blue,
    point_in_triangle,
    red,
)
from untangle.logger import logger
from untangle.matching import Flip, Matching, apply_flip, crossing_pairs

XY = Tuple[Fraction, Fraction]
Pair = Tuple[str, str]


@dataclass(frozen=True)
class LabelledMatching:
    matching: Matching
    red_labels: Tuple[str, ...]
    blue_labels: Tuple[str, ...]

    def pairs(self, mate: Optional[Mate] = None) -> List[Pair]:
        mate = self.matching.mate if mate is None else mate
        return [(r, self.blue_labels[mate[i]]) for i, r in enumerate(self.red_labels)]

    def has_pair(self, red_label: str, blue_label: str, mate: Optional[Mate] = None):
        mate = self.matching.mate if mate is None else mate
        i = self.red_labels.index(red_label)
        return mate[i] == self.blue_labels.index(blue_label)


def labelled_matching(points: Mapping[str, Point], pairs: Sequence[Pair]) -> LabelledMatching:
    red_labels = tuple(r for r, _ in pairs)
    blue_labels = tuple(b for _, b in pairs)
    matching = Matching(
        [points[r] for r in red_labels],
        [points[b] for b in blue_labels],
        range(len(pairs)),
    )
    return LabelledMatching(matching, red_labels, blue_labels)


def _xy(x, y) -> XY:
    return (Fraction(x), Fraction(y))


def _x_at(p: XY, q: XY, y) -> Fraction:
    return p[0] + (q[0] - p[0]) * (y - p[1]) / (q[1] - p[1])


def _y_at(p: XY, q: XY, x) -> Fraction:
    return p[1] + (q[1] - p[1]) * (x - p[0]) / (q[0] - p[0])


def _meet(a: XY, b: XY, c: XY, d: XY) -> XY:
    """intersection of the lines ab and cd"""
    ux, uy = b[0] - a[0], b[1] - a[1]
    vx, vy = d[0] - c[0], d[1] - c[1]
    t = ((c[0] - a[0]) * vy - (c[1] - a[1]) * vx) / (ux * vy - uy * vx)
    return (a[0] + t * ux, a[1] + t * uy)


# variable gadget


class VariableState(Enum):
    INITIAL = "initial"
    TRUE = "true"  # the bottom edge is present
    FALSE = "false"  # the top edge is present


VARIABLE_PAIRS = {
    VariableState.INITIAL: (("BL", "TR"), ("M", "BR"), ("TL", "N")),
    VariableState.TRUE: (("BL", "BR"), ("M", "TR"), ("TL", "N")),
    VariableState.FALSE: (("TL", "TR"), ("BL", "N"), ("M", "BR")),
}

# feet of the left, middle and right clause edges, as fractions of the
# height of the inner triangle at the edge abscissa
FOOT_HEIGHTS = (Fraction(3, 5), Fraction(2, 5), Fraction(4, 5))

# corner replacing the clause edge once the variable is set against it
SUBSTITUTE_CORNERS = {
    Polarity.POSITIVE: ("TR", "TL", "TL"),
    Polarity.NEGATIVE: ("BR", "BL", "BL"),
}


@dataclass(frozen=True)
class VariableGadget:
    rect: Rect
    points: Dict[str, Point]

    def matching(self, state: VariableState = VariableState.INITIAL) -> LabelledMatching:
        return labelled_matching(self.points, VARIABLE_PAIRS[state])

    def inner_triangle(self, polarity: Polarity) -> Tuple[Point, Point, Point]:
        if polarity is Polarity.POSITIVE:
            return self.points["TL"], self.points["M"], self.points["TR"]
        return self.points["BL"], self.points["N"], self.points["BR"]

    def floor(self, x) -> Fraction:
        """lower side of the positive inner triangle at ``x``"""
        m = self.points["M"].xy
        corner = self.points["TL" if x < m[0] else "TR"].xy
        return _y_at(m, corner, x)

    def foot(self, role: int, x=None) -> XY:
        """positive-frame foot of the lone clause edge playing ``role``"""
        if x is None:
            x = self.rect.centroid[0] + constants.CONNECTION_OFFSET
        low = self.floor(x)
        return (Fraction(x), low + (self.rect.y1 - low) * FOOT_HEIGHTS[role])

    def arc_foot(self, x) -> XY:
        """Positive-frame foot of an edge on a side shared by several clauses.

        The feet of a side lie on a parabola through the two top corners,
        which stays inside the inner triangle.
        """
        u = x - self.rect.x0
        width = self.rect.x1 - self.rect.x0
        depth = (self.rect.y1 - self.rect.y0) / 2 * u * (width - u) / width**2
        return (Fraction(x), self.rect.y1 - depth)


def build_variable_gadget(rect: Rect) -> VariableGadget:
    """Three segments on the rectangle corners and two interior points, the
    red one just above the diagonal and the blue one just below."""
    if rect.x1 <= rect.x0 or rect.y1 <= rect.y0:
        raise DegenerateRectangle(f"{rect} has no interior")
    cx, cy = rect.centroid
    dy = (rect.y1 - rect.y0) / 2 * constants.VARIABLE_INNER
    points = {
        "BL": red(rect.x0, rect.y0),
        "TL": red(rect.x0, rect.y1),
        "M": red(cx, cy + dy),
        "TR": blue(rect.x1, rect.y1),
        "BR": blue(rect.x1, rect.y0),
        "N": blue(cx, cy - dy),
    }
    return VariableGadget(rect, points)


# OR gadget

OR_ROLES = (
    "lead_red",
    "lead_blue",
    "pair_red",
    "pair_blue",
    "bar_red",
    "bar_blue",
    "lead_sub",
    "pair_sub",
)

# name, segments, index pairs that must cross
OR_CONSTRAINTS = (
    (
        "zero-zero input",
        (("lead_red", "lead_sub"), ("pair_sub", "pair_blue"), ("bar_red", "bar_blue")),
        {(0, 2), (1, 2)},
    ),
    (
        "zero-one input",
        (("lead_red", "lead_sub"), ("bar_red", "bar_blue"), ("pair_red", "pair_blue")),
        {(0, 1)},
    ),
    (
        "one-zero input",
        (("pair_sub", "pair_blue"), ("bar_red", "bar_blue"), ("lead_red", "lead_blue")),
        {(0, 1)},
    ),
    (
        "one-one input",
        (("lead_red", "lead_blue"), ("pair_red", "pair_blue"), ("bar_red", "bar_blue")),
        set(),
    ),
    (
        "zero-zero end",
        (("lead_red", "pair_blue"), ("pair_sub", "bar_blue"), ("bar_red", "lead_sub")),
        set(),
    ),
    (
        "zero-one end",
        (("lead_red", "bar_blue"), ("pair_red", "pair_blue"), ("bar_red", "lead_sub")),
        set(),
    ),
    (
        "one-zero end",
        (("lead_red", "lead_blue"), ("pair_sub", "bar_blue"), ("bar_red", "pair_blue")),
        set(),
    ),
    (
        "lead detour",
        (("lead_red", "bar_blue"), ("pair_sub", "pair_blue"), ("bar_red", "lead_sub")),
        {(0, 1)},
    ),
    (
        "pair detour",
        (("lead_red", "lead_sub"), ("bar_red", "pair_blue"), ("pair_sub", "bar_blue")),
        {(0, 1)},
    ),
)

OR_LENGTHS = {(0, 0): 2, (0, 1): 1, (1, 0): 1, (1, 1): 0}


@dataclass(frozen=True)
class OrGadget:
    """Eight points whose four input matchings compute an OR; the output is
    0 exactly when the final matching holds ``OUTPUT``."""

    roles: Dict[str, Point]

    OUTPUT = ("lead_red", "pair_blue")

    @staticmethod
    def input_pairs(x: int, y: int) -> List[Pair]:
        return [
            ("lead_red", "lead_blue") if x else ("lead_red", "lead_sub"),
            ("pair_red", "pair_blue") if y else ("pair_sub", "pair_blue"),
            ("bar_red", "bar_blue"),
        ]

    def inputs(self, x: int, y: int) -> LabelledMatching:
        return labelled_matching(self.roles, self.input_pairs(x, y))


def _check_constraint(roles: Mapping[str, Point], name: str, pairs, expected):
    found = crossing_pairs(labelled_matching(roles, pairs).matching)
    if found != expected:
        raise ConstraintUnsatisfied(
            f"{name}: crossing pairs {sorted(found)}, expected {sorted(expected)}"
        )


def build_or_gadget(
    roles: Mapping[str, Point], alternate_lead: Optional[Tuple[Point, Point]] = None
) -> OrGadget:
    """Audits every constraint of the OR definition on ``roles``.

    ``alternate_lead`` is a second segment that may stand for the
    lead input 1, as the output of a previous gadget does.
    """
    missing = set(OR_ROLES) - set(roles)
    if missing:
        raise ValueError(f"missing OR roles: {sorted(missing)}")
    for name, pairs, expected in OR_CONSTRAINTS:
        _check_constraint(roles, name, pairs, expected)
    if alternate_lead is not None:
        alternate = dict(roles, lead_red=alternate_lead[0], lead_blue=alternate_lead[1])
        for name, pairs, expected in OR_CONSTRAINTS:
            if ("lead_red", "lead_blue") in pairs:
                _check_constraint(alternate, f"{name} (alternate lead)", pairs, expected)
    return OrGadget(dict(roles))


# clause gadget

CLAUSE_RED_LABELS = (
    "left_top",
    "mid_foot",
    "low_red",
    "right_foot",
    "high_red",
    "mid_sub",
    "right_sub",
)
SUBSTITUTES = ("left_sub", "mid_sub", "right_sub")
FEET = ("left_foot", "mid_foot", "right_foot")
# red end of each clause edge in the all-true input
EDGE_REDS = ("left_top", "mid_foot", "right_foot")

FIRST_OR = {
    "lead_red": "left_top",
    "lead_blue": "left_foot",
    "pair_red": "mid_foot",
    "pair_blue": "mid_top",
    "bar_red": "low_red",
    "bar_blue": "low_blue",
    "lead_sub": "left_sub",
    "pair_sub": "mid_sub",
}
# the first output feeds the lead input of the second gadget
SECOND_OR = {
    "lead_red": "left_top",
    "lead_blue": "low_blue",
    "pair_red": "right_foot",
    "pair_blue": "right_top",
    "bar_red": "high_red",
    "bar_blue": "high_blue",
    "lead_sub": "mid_top",
    "pair_sub": "right_sub",
}

CLAUSE_OUTPUT = ("left_top", "right_top")

# only the all-zero input reaches the output; a lone true on the right edge
# costs one flip more than a lone true on the left or middle edge, and its 3
# flips plus the 2 substitute flips of the false edges still fit the 5 flips
# a satisfied clause is allowed
CLAUSE_LENGTHS = {
    (0, 0, 0): 4,
    (1, 0, 0): 2,
    (0, 1, 0): 2,
    (0, 0, 1): 3,
    (1, 1, 0): 1,
    (1, 0, 1): 1,
    (0, 1, 1): 1,
    (1, 1, 1): 0,
}

CANONICAL_INPUTS = tuple(
    constants.VARIABLE_PITCH * k + constants.CONNECTION_OFFSET for k in range(3)
)


@dataclass(frozen=True)
class ClauseAnchors:
    """positive-frame feet of the three edges and of the substitute corners"""

    feet: Tuple[XY, XY, XY]
    substitutes: Tuple[XY, XY, XY]


def anchors_for(variables: Sequence[VariableGadget]) -> ClauseAnchors:
    corners = SUBSTITUTE_CORNERS[Polarity.POSITIVE]
    return ClauseAnchors(
        tuple(v.foot(role) for role, v in enumerate(variables)),
        tuple(v.points[corners[role]].xy for role, v in enumerate(variables)),
    )


def canonical_anchors(input_xs: Sequence) -> ClauseAnchors:
    """anchors of standard variables whose edges sit at ``input_xs``"""
    if len(input_xs) != 3 or not input_xs[0] < input_xs[1] < input_xs[2]:
        raise ValueError(f"three increasing input positions expected: {input_xs}")
    return anchors_for(
        [
            build_variable_gadget(variable_rect(Fraction(x) - constants.CONNECTION_OFFSET))
            for x in input_xs
        ]
    )


def _clause_layout(anchors: ClauseAnchors, base: Fraction) -> Dict[str, XY]:
    (x1, _), (x2, _), (x3, _) = anchors.feet
    left_sub, mid_sub, right_sub = anchors.substitutes
    low = base + constants.CLAUSE_ROW_LOW
    high = base + constants.CLAUSE_ROW_HIGH

    left_top = _xy(x1, high)
    mid_top = _xy(x2, high)
    # the bar ends halfway to where the substitute segments meet its row
    reach_left = _x_at(left_top, left_sub, low) - x1
    reach_mid = x2 - _x_at(mid_sub, mid_top, low)
    low_red = _xy(x1 + reach_left / 2, low)
    low_blue = _xy(x2 - reach_mid / 2, low)

    apex = _meet(left_top, low_blue, low_red, mid_top)
    high_red = _xy(
        (left_top[0] + mid_top[0] + apex[0]) / 3, (left_top[1] + mid_top[1] + apex[1]) / 3
    )
    # steep enough that the segments from high_red pass above mid_top
    rise = 4 * (high - high_red[1]) * (x3 - high_red[0]) / (x2 - high_red[0])
    right_top = _xy(x3, high + rise + (high - base))
    if right_top[1] >= base + constants.CLAUSE_HEIGHT:
        raise ConstraintUnsatisfied(
            f"right top at {float(right_top[1]):.2f} leaves the clause band"
        )
    right_foot = anchors.feet[2]
    # wedge between the right substitute and the right edge, cut at the base
    sub_y = right_sub[1] + base
    sub = (_x_at(right_top, right_sub, sub_y), sub_y)
    foot = (right_foot[0], right_foot[1] + base)
    high_blue = (
        right_top[0] + (sub[0] - right_top[0] + foot[0] - right_top[0]) / 4,
        right_top[1] + (sub[1] - right_top[1] + foot[1] - right_top[1]) / 4,
    )
    return {
        "left_top": left_top,
        "left_foot": anchors.feet[0],
        "mid_foot": anchors.feet[1],
        "mid_top": mid_top,
        "low_red": low_red,
        "low_blue": low_blue,
        "right_foot": right_foot,
        "right_top": right_top,
        "high_red": high_red,
        "high_blue": high_blue,
        "left_sub": left_sub,
        "mid_sub": mid_sub,
        "right_sub": right_sub,
        "apex": apex,
    }


@dataclass(frozen=True)
class ClauseGadget:
    polarity: Polarity
    points: Dict[str, Point]
    first: OrGadget
    second: OrGadget

    @staticmethod
    def input_pairs(x: int, y: int, z: int) -> List[Pair]:
        return [
            ("left_top", "left_foot") if x else ("left_top", "left_sub"),
            ("mid_foot", "mid_top") if y else ("mid_sub", "mid_top"),
            ("right_foot", "right_top") if z else ("right_sub", "right_top"),
            ("low_red", "low_blue"),
            ("high_red", "high_blue"),
        ]

    def inputs(self, x: int, y: int, z: int) -> LabelledMatching:
        return labelled_matching(self.points, self.input_pairs(x, y, z))

    def padded(self, x: int, y: int, z: int, k: int) -> LabelledMatching:
        """the input matching plus a k-padding along the output segment"""
        padding = build_padding(
            k, Segment(self.points["left_top"], self.points["right_top"])
        )
        points = dict(self.points)
        points.update(padding.points)
        return labelled_matching(
            points, self.input_pairs(x, y, z) + padding.chain_pairs()
        )


def build_clause_gadget(
    input_xs: Sequence = CANONICAL_INPUTS,
    base=0,
    polarity: Polarity = Polarity.POSITIVE,
    anchors: Optional[ClauseAnchors] = None,
) -> ClauseGadget:
    """Two chained OR gadgets over the three clause edges.

    Without ``anchors`` the substitute points are the corners of standard
    variables placed under ``input_xs``; ``base`` raises the gadget for
    nested clause levels.
    """
    if anchors is None:
        anchors = canonical_anchors(input_xs)
    layout = _clause_layout(anchors, Fraction(base))
    sign = polarity.sign
    points = {
        label: Point(
            x,
            sign * y,
            Color.RED if label in CLAUSE_RED_LABELS else Color.BLUE,
        )
        for label, (x, y) in layout.items()
        if label != "apex"
    }
    apex = Point(layout["apex"][0], sign * layout["apex"][1])
    inside = point_in_triangle(
        points["high_red"], points["left_top"], points["mid_top"], apex
    )
    if inside is not Containment.INSIDE:
        raise ConstraintUnsatisfied("high_red is not inside the first top triangle")
    first = build_or_gadget({role: points[label] for role, label in FIRST_OR.items()})
    second = build_or_gadget(
        {role: points[label] for role, label in SECOND_OR.items()},
        alternate_lead=(points["low_red"], points["mid_top"]),
    )
    return ClauseGadget(polarity, points, first, second)


# padding gadget

TRIGGER = ("trigger_red", "trigger_blue")


@dataclass(frozen=True)
class PaddingGadget:
    k: int
    points: Dict[str, Point]

    def chain_pairs(self) -> List[Pair]:
        return [(f"pad_red_{i}", f"pad_blue_{i}") for i in range(1, self.k + 1)]

    def triggered(self) -> LabelledMatching:
        return labelled_matching(self.points, [TRIGGER] + self.chain_pairs())

    def untriggered(self) -> LabelledMatching:
        return labelled_matching(self.points, self.chain_pairs())


def _standard_chain(k: int) -> List[Tuple[XY, XY]]:
    """Chain segments in the frame where the trigger runs from (0, 0) to
    (2k + 2, 0); segment i only crosses the segment from the red end of
    segment i - 1 to the blue end of the trigger."""
    sink = _xy(2 * k + 2, 0)
    reds = [_xy(0, 0)]
    chain = []
    for i in range(1, k + 1):
        if i == 1:
            bottom, top = _xy(1, -1), _xy(1, 1)
        else:
            lo = _y_at(reds[i - 1], sink, i)
            hi = _y_at(reds[i - 2], sink, i)
            bottom, top = _xy(i, lo - (hi - lo) / 2), _xy(i, (lo + hi) / 2)
        reds.append(bottom)
        chain.append((bottom, top))
    return chain


def build_padding(k: int, trigger: Segment) -> PaddingGadget:
    """k segments laid in a thin band along ``trigger``; the triggered form
    untangles in exactly k flips and the chain alone is crossing-free."""
    if k < 0:
        raise ValueError("padding size must be non-negative")
    start, end = trigger.red, trigger.blue
    length = Fraction(2 * k + 2)
    dx, dy = end.x - start.x, end.y - start.y
    # the band is squeezed by 40 times the frame length across the trigger
    squeeze = 40 * length

    def place(p: XY) -> XY:
        along, across = p[0] / length, p[1] / squeeze
        return (start.x + along * dx - across * dy, start.y + along * dy + across * dx)

    points = {TRIGGER[0]: start, TRIGGER[1]: end}
    for i, (bottom, top) in enumerate(_standard_chain(k), start=1):
        points[f"pad_red_{i}"] = red(*place(bottom))
        points[f"pad_blue_{i}"] = blue(*place(top))
    return PaddingGadget(k, points)


# branching

BRANCHING_TOP = 20
BRANCHING_EPSILON = Fraction(1, 64)


def build_branching(a: int, b: int) -> LabelledMatching:
    """A variable top segment crossed by ``a`` edges with red feet then ``b``
    edges with blue feet, each edge head guarded by a short horizontal.

    Feet and heads lie on two convex arcs; the horizontal of a head sits
    just below it on the side its long segments leave towards.
    """
    if a < 0 or b < 0 or a + b < 1:
        raise ValueError("a branching needs a, b >= 0 and a + b >= 1")
    n = a + b
    gap = Fraction(8, n)
    eps = BRANCHING_EPSILON
    eta = eps * gap / 32
    points = {"TL": red(-6, 1), "TR": blue(6, 1)}
    pairs = [("TL", "TR")]
    for i in range(n):
        x = -4 + gap * (2 * i + 1) / 2
        foot_y = 1 - (36 - x * x) / 48
        head_y = BRANCHING_TOP - x * x / 16
        guard_y = head_y - eps
        if i < a:
            points[f"foot_{i}"] = red(x, foot_y)
            points[f"head_{i}"] = blue(x, head_y)
            points[f"far_{i}"] = red(x - gap / 2, guard_y)
            points[f"near_{i}"] = blue(x - eta, guard_y)
            pairs += [(f"foot_{i}", f"head_{i}"), (f"far_{i}", f"near_{i}")]
        else:
            points[f"foot_{i}"] = blue(x, foot_y)
            points[f"head_{i}"] = red(x, head_y)
            points[f"near_{i}"] = red(x + eta, guard_y)
            points[f"far_{i}"] = blue(x + gap / 2, guard_y)
            pairs += [(f"head_{i}", f"foot_{i}"), (f"near_{i}", f"far_{i}")]
    return labelled_matching(points, pairs)


# reports


@dataclass(frozen=True)
class GadgetReport:
    gadget: str
    sequences: int
    lengths: Tuple[int, ...]
    ends: int
    expected_length: int
    expected_ends: int = 1
    output_ok: bool = True
    truncated: bool = False
    expected_sequences: Optional[int] = None

    @property
    def verdict(self) -> bool:
        return (
            not self.truncated
            and self.output_ok
            and self.lengths == (self.expected_length,)
            and self.ends == self.expected_ends
            and self.expected_sequences in (None, self.sequences)
        )


def enumerate_gadget(
    gadget: str,
    labelled: LabelledMatching,
    expected_length: int,
    expected_ends: int = 1,
    output: Optional[Tuple[str, str, bool]] = None,
    limit: Optional[int] = constants.DEFAULT_ENUMERATION_LIMIT,
    expected_sequences: Optional[int] = None,
) -> GadgetReport:
    """Enumerates every untangle sequence of a gadget state; ``output`` is a
    pair and whether it must be present in every final matching.

    ``expected_sequences`` pins the number of distinct sequences where it
    is known; None leaves it unchecked.
    """
    enumerator = SequenceEnumerator(labelled.matching, limit=limit)
    lengths, ends = set(), set()
    output_ok = True
    for sequence in enumerator:
        mate = sequence.end.mate
        lengths.add(len(sequence))
        ends.add(mate)
        if output is not None and labelled.has_pair(output[0], output[1], mate) != output[2]:
            output_ok = False
    report = GadgetReport(
        gadget,
        enumerator.processed_count,
        tuple(sorted(lengths)),
        len(ends),
        expected_length,
        expected_ends,
        output_ok,
        enumerator.truncated,
        expected_sequences,
    )
    log = logger.info if report.verdict else logger.warning
    log(
        "gadget %s: %s sequences, lengths %s, %s ends, verdict %s",
        gadget,
        report.sequences,
        report.lengths,
        report.ends,
        report.verdict,
    )
    return report


def verify_branching(a: int, b: int) -> GadgetReport:
    return enumerate_gadget(f"branching-{a}-{b}", build_branching(a, b), 2 * (a + b))


# number of distinct untangle sequences, where every order is forced
OR_SEQUENCES = {(0, 0): 2, (0, 1): 1, (1, 0): 1, (1, 1): 1}
CLAUSE_SEQUENCES = {bits: 1 for bits in CLAUSE_LENGTHS if sum(bits) >= 2}


def gadget_jobs(
    padding_sizes: Sequence[int] = (0, 1, 3, 9),
    branchings: Sequence[Tuple[int, int]] = ((1, 0), (1, 1), (2, 1), (2, 2)),
    padded_clause_k: int = 9,
) -> Dict[str, Callable[[], GadgetReport]]:
    jobs: Dict[str, Callable[[], GadgetReport]] = {}
    variable = build_variable_gadget(variable_rect(Fraction(0)))
    jobs["variable"] = partial(
        enumerate_gadget,
        "variable",
        variable.matching(),
        1,
        expected_ends=2,
        expected_sequences=2,
    )
    clause = build_clause_gadget()
    for x, y in product((0, 1), repeat=2):
        name = f"or-{x}{y}"
        jobs[name] = partial(
            enumerate_gadget,
            name,
            clause.first.inputs(x, y),
            OR_LENGTHS[(x, y)],
            output=(*OrGadget.OUTPUT, not (x or y)),
            expected_sequences=OR_SEQUENCES[(x, y)],
        )
    for bits in product((0, 1), repeat=3):
        name = "clause-" + "".join(map(str, bits))
        jobs[name] = partial(
            enumerate_gadget,
            name,
            clause.inputs(*bits),
            CLAUSE_LENGTHS[bits],
            output=(*CLAUSE_OUTPUT, not any(bits)),
            expected_sequences=CLAUSE_SEQUENCES.get(bits),
        )
    for k in padding_sizes:
        name = f"padding-{k}"
        padding = build_padding(k, Segment(red(0, 0), blue(12, 5)))
        jobs[name] = partial(
            enumerate_gadget, name, padding.triggered(), k, expected_sequences=1
        )
    name = f"padded-clause-{padded_clause_k}"
    jobs[name] = partial(
        enumerate_gadget,
        name,
        clause.padded(0, 0, 0, padded_clause_k),
        CLAUSE_LENGTHS[(0, 0, 0)] + padded_clause_k,
    )
    for a, b in branchings:
        jobs[f"branching-{a}-{b}"] = partial(verify_branching, a, b)
    return jobs


def audit_gadgets(workers: Optional[int] = None, **kwargs) -> List[GadgetReport]:
    """runs every gadget enumeration in a thread pool, in job order"""
    jobs = gadget_jobs(**kwargs)
    order = {name: k for k, name in enumerate(jobs)}
    reports = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(job) for job in jobs.values()]
        for future in as_completed(futures):
            reports.append(future.result())
    return sorted(reports, key=lambda report: order[report.gadget])


# assembly


def padding_size(formula: RpmFormula, alpha=1) -> int:
    return math.ceil(Fraction(alpha) * (len(formula.variables) + 5 * len(formula.clauses))) + 1


def point_count(variables: int, clauses: int, k: int) -> int:
    """six points per variable, ten per clause and two per padding segment"""
    return 6 * variables + (10 + 2 * k) * clauses


def coordinate_bits(matching: Matching) -> int:
    return max(
        (
            max(abs(c.numerator).bit_length(), c.denominator.bit_length())
            for p in matching.points
            for c in p.xy
        ),
        default=0,
    )


@dataclass(frozen=True)
class ReductionInstance:
    formula: RpmFormula
    embedding: Embedding
    alpha: Fraction
    padding: int
    labelled: LabelledMatching

    @property
    def matching(self) -> Matching:
        return self.labelled.matching

    @property
    def threshold(self) -> Fraction:
        return self.alpha * (len(self.formula.variables) + 5 * len(self.formula.clauses))

    def assigned(self, assignment: Mapping[str, bool]) -> Matching:
        """the start matching with each variable of ``assignment`` already set"""
        matching = self.matching
        reds = self.labelled.red_labels
        for name, value in assignment.items():
            partner = "M" if value else "TL"
            flip = Flip(reds.index(f"{name}:BL"), reds.index(f"{name}:{partner}"))
            matching = apply_flip(matching, flip)
        return matching


def _owner(label: str) -> str:
    return label.rpartition(":")[0]


TOPS = ("left_top", "mid_top", "right_top")
# (x, clause index, role) of the clause edges entering one side of a variable
Side = List[Tuple[Fraction, int, int]]


def _sides(embedding: Embedding) -> Dict[Tuple[str, Polarity], Side]:
    sides: Dict[Tuple[str, Polarity], Side] = {}
    for index, placement in enumerate(embedding.clauses):
        clause = placement.clause
        for role, (name, x) in enumerate(zip(clause.variables, placement.edges)):
            sides.setdefault((name, clause.polarity), []).append((x, index, role))
    for side in sides.values():
        side.sort()
    return sides


def _side_anchors(name: str, polarity: Polarity, gadget: VariableGadget, side: Side):
    """Positive-frame feet of the edges of a side and their substitutes.

    Along a shared side the edges with a red foot come first. Each takes the
    foot before it as substitute, the first one the left corner; each edge
    with a blue foot takes the foot after it, the last one the right corner.
    """
    roles = [role for _, _, role in side]
    if sorted(roles, key=lambda role: role == 0) != roles:
        raise AssemblyAuditFailed(
            "branching", f"variable {name}: a red foot follows a blue foot"
        )
    feet: Dict[Tuple[int, int], XY] = {}
    for x, index, role in side:
        feet[(index, role)] = gadget.foot(role, x) if len(side) == 1 else gadget.arc_foot(x)

    corners = SUBSTITUTE_CORNERS[polarity]
    sign = polarity.sign
    subs: Dict[Tuple[int, int], Tuple[XY, str]] = {}
    reds = [(index, role) for _, index, role in side if role != 0]
    blues = [(index, role) for _, index, role in side if role == 0]
    for chain in (reds, blues[::-1]):
        for k, (index, role) in enumerate(chain):
            if k == 0:
                corner = gadget.points[corners[role]]
                subs[(index, role)] = ((corner.x, sign * corner.y), f"{name}:{corners[role]}")
            else:
                near = chain[k - 1]
                subs[(index, role)] = (feet[near], f"clause{near[0]}:{FEET[near[1]]}")
    return feet, subs


def _audit_branching(points, name: str, polarity: Polarity, side: Side, subs) -> None:
    """The top segment set against a side untangles its edges in one flip
    each, every edge top ending on its substitute."""
    left, right = SUBSTITUTE_CORNERS[polarity][1], SUBSTITUTE_CORNERS[polarity][0]
    pairs = [(f"{name}:{left}", f"{name}:{right}")]
    wanted = []
    for _, index, role in side:
        foot, top = f"clause{index}:{FEET[role]}", f"clause{index}:{TOPS[role]}"
        sub = subs[(index, role)][1]
        if role == 0:
            pairs.append((top, foot))
            wanted.append((top, sub))
        else:
            pairs.append((foot, top))
            wanted.append((sub, top))
    labelled = labelled_matching(points, pairs)
    enumerator = SequenceEnumerator(labelled.matching)
    for sequence in enumerator:
        mate = sequence.end.mate
        if len(sequence) != len(side):
            raise AssemblyAuditFailed(
                "branching", f"variable {name}: {len(sequence)} flips for {len(side)} edges"
            )
        missing = [pair for pair in wanted if not labelled.has_pair(*pair, mate)]
        if missing:
            raise AssemblyAuditFailed(
                "branching", f"variable {name}: {missing} absent after untangling"
            )
    if enumerator.truncated:
        raise AssemblyAuditFailed("branching", f"variable {name}: enumeration truncated")


def assemble_m_phi(
    formula: RpmFormula, embedding: Optional[Embedding] = None, alpha=1
) -> ReductionInstance:
    """Places a variable gadget per variable and a padded clause gadget per
    clause, every clause edge starting as if its variable were true.

    Clauses sharing a side of a variable are chained along it: setting the
    variable against them flips every edge of the side once.
    """
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    if embedding is None:
        embedding = derive_embedding(formula)
    report = validate_embedding(formula, embedding)
    if not report.valid:
        raise AssemblyAuditFailed("embedding", report.violations[0])

    k = padding_size(formula, alpha)
    gadgets = {v: build_variable_gadget(rect) for v, rect in embedding.variables.items()}
    points: Dict[str, Point] = {}
    pairs: List[Pair] = []
    edges = {(v, p): set() for v in formula.variables for p in Polarity}
    for name in formula.variables:
        gadget = gadgets[name]
        points.update({f"{name}:{label}": p for label, p in gadget.points.items()})
        pairs += [(f"{name}:{r}", f"{name}:{b}") for r, b in VARIABLE_PAIRS[VariableState.INITIAL]]

    sides = _sides(embedding)
    feet: Dict[Tuple[int, int], XY] = {}
    subs: Dict[Tuple[int, int], Tuple[XY, str]] = {}
    for (name, polarity), side in sides.items():
        side_feet, side_subs = _side_anchors(name, polarity, gadgets[name], side)
        feet.update(side_feet)
        subs.update(side_subs)

    for index, placement in enumerate(embedding.clauses):
        prefix = f"clause{index}"
        clause = placement.clause
        anchors = ClauseAnchors(
            tuple(feet[(index, role)] for role in range(3)),
            tuple(subs[(index, role)][0] for role in range(3)),
        )
        try:
            gadget = build_clause_gadget(
                base=placement.base, polarity=clause.polarity, anchors=anchors
            )
        except ConstraintUnsatisfied as e:
            raise AssemblyAuditFailed("clause", f"'{clause}': {e}") from e
        for foot, name in zip(FEET, clause.variables):
            triangle = gadgets[name].inner_triangle(clause.polarity)
            if point_in_triangle(gadget.points[foot], *triangle) is not Containment.INSIDE:
                raise AssemblyAuditFailed(
                    "substitutes", f"'{clause}': {foot} is outside its variable"
                )
        for name, edge in zip(clause.variables, EDGE_REDS):
            edges[(name, clause.polarity)].add(f"{prefix}:{edge}")
        points.update(
            {
                f"{prefix}:{label}": p
                for label, p in gadget.points.items()
                if label not in SUBSTITUTES
            }
        )
        pairs += [(f"{prefix}:{r}", f"{prefix}:{b}") for r, b in gadget.input_pairs(1, 1, 1)]
        padding = build_padding(
            k, Segment(gadget.points["left_top"], gadget.points["right_top"])
        )
        for label, p in padding.points.items():
            if label not in TRIGGER:
                points[f"{prefix}:{label}"] = p
        pairs += [(f"{prefix}:{r}", f"{prefix}:{b}") for r, b in padding.chain_pairs()]

    for (name, polarity), side in sides.items():
        _audit_branching(points, name, polarity, side, subs)
    labelled = labelled_matching(points, pairs)
    _audit_assembly(labelled, points, gadgets, edges)
    logger.info(
        "assembled %s points for %s variables, %s clauses, padding %s",
        len(points),
        len(formula.variables),
        len(formula.clauses),
        k,
    )
    return ReductionInstance(formula, embedding, alpha, k, labelled)


def _audit_assembly(labelled: LabelledMatching, points, gadgets, edges):
    """Points are distinct, only variables cross, and a set variable crosses
    exactly the edges of the clauses it falsifies."""
    places = {}
    for label, p in points.items():
        if p.xy in places:
            raise AssemblyAuditFailed("points", f"{label} and {places[p.xy]} coincide")
        places[p.xy] = label

    matching = labelled.matching
    for i, j in crossing_pairs(matching):
        owner = _owner(labelled.red_labels[i])
        if owner not in gadgets or owner != _owner(labelled.red_labels[j]):
            raise AssemblyAuditFailed(
                "crossings",
                f"{labelled.red_labels[i]} crosses {labelled.red_labels[j]}",
            )

    static = [(r, b) for r, b in labelled.pairs() if _owner(r) not in gadgets]
    for name in gadgets:
        for state, polarity in (
            (VariableState.TRUE, Polarity.NEGATIVE),
            (VariableState.FALSE, Polarity.POSITIVE),
        ):
            own = [(f"{name}:{r}", f"{name}:{b}") for r, b in VARIABLE_PAIRS[state]]
            trial = labelled_matching(points, own + static)
            hit = {
                trial.red_labels[j]
                for i, j in crossing_pairs(trial.matching)
                if i < len(own) <= j
            }
            if hit != edges[(name, polarity)]:
                raise AssemblyAuditFailed(
                    "assignment",
                    f"{name} set {state.value} crosses {sorted(hit)}, "
                    f"expected {sorted(edges[(name, polarity)])}",
                )


class Verdict(Enum):
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    length: int
    threshold: Fraction
    explored: int


def decide_via_untangling(
    matching: Matching,
    formula: RpmFormula,
    alpha=1,
    budget: int = constants.DEFAULT_BUDGET,
) -> Decision:
    """Satisfiable iff the flip distance is at most alpha (v + 5c).

    The distance comes from an exact search, so only small instances fit
    in ``budget``.
    """
    result = shortest_untangle(matching, budget)
    threshold = Fraction(alpha) * (len(formula.variables) + 5 * len(formula.clauses))
    verdict = Verdict.SATISFIABLE if result.length <= threshold else Verdict.UNSATISFIABLE
    logger.info(
        "untangle distance %s against threshold %s: %s",
        result.length,
        threshold,
        verdict.value,
    )
    return Decision(verdict, result.length, threshold, result.explored)
