"""
Rectilinear planar monotone 3-SAT formulas and their embeddings.

A formula file holds the variable order on its first line and one clause
per following line::

    # comment
    x1 x2 x3 x4
    + x1 x2 x3 @1
    - x2 x3 x4 @1

``+`` clauses are all-positive and sit above the variable row, ``-``
clauses are all-negative and sit below it. ``@level`` is the nesting level
of the clause rectangle, 1 being the closest to the variables.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterable, List, Mapping, Tuple

from untangle import constants
from untangle.geometry import ValidationReport


class Polarity(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    @property
    def sign(self) -> int:
        return 1 if self is Polarity.POSITIVE else -1


@dataclass(frozen=True)
class Clause:
    polarity: Polarity
    variables: Tuple[str, str, str]
    level: int = 1

    def satisfied(self, assignment: Mapping[str, bool]) -> bool:
        wanted = self.polarity is Polarity.POSITIVE
        return any(assignment[v] == wanted for v in self.variables)

    def __str__(self) -> str:
        return f"{self.polarity.value} {' '.join(self.variables)} @{self.level}"


@dataclass(frozen=True)
class RpmFormula:
    variables: Tuple[str, ...]
    clauses: Tuple[Clause, ...]

    def evaluate(self, assignment: Mapping[str, bool]) -> bool:
        return all(clause.satisfied(assignment) for clause in self.clauses)

    def assignments(self) -> Iterable[Dict[str, bool]]:
        for values in product((False, True), repeat=len(self.variables)):
            yield dict(zip(self.variables, values))

    def is_satisfiable(self) -> bool:
        """brute force, for small formulas"""
        return any(self.evaluate(a) for a in self.assignments())

    def occurrences(self, variable: str, polarity: Polarity) -> List[Clause]:
        return [
            c
            for c in self.clauses
            if c.polarity is polarity and variable in c.variables
        ]

    def __str__(self) -> str:
        return "\n".join([" ".join(self.variables)] + [str(c) for c in self.clauses])


def parse_formula(text: str) -> RpmFormula:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("formula has no variable line")
    variables = tuple(lines[0].split())
    if len(set(variables)) != len(variables):
        raise ValueError(f"duplicate variable in {lines[0]!r}")
    order = {v: k for k, v in enumerate(variables)}

    clauses = []
    for line in lines[1:]:
        tokens = line.split()
        level = 1
        if tokens and tokens[-1].startswith("@"):
            try:
                level = int(tokens.pop()[1:])
            except ValueError as e:
                raise ValueError(f"bad clause level in {line!r}") from e
        if len(tokens) != 4 or tokens[0] not in ("+", "-"):
            raise ValueError(f"a clause reads '+|- a b c [@level]', got {line!r}")
        names = tokens[1:]
        unknown = [v for v in names if v not in order]
        if unknown:
            raise ValueError(f"unknown variables {unknown} in {line!r}")
        if level < 1:
            raise ValueError(f"clause level must be at least 1 in {line!r}")
        names.sort(key=order.__getitem__)
        if len(set(names)) != 3:
            raise ValueError(f"a clause needs three distinct variables: {line!r}")
        clauses.append(Clause(Polarity(tokens[0]), tuple(names), level))
    return RpmFormula(variables, tuple(clauses))


@dataclass(frozen=True)
class Rect:
    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction

    @property
    def centroid(self) -> Tuple[Fraction, Fraction]:
        return (Fraction(self.x0 + self.x1) / 2, Fraction(self.y0 + self.y1) / 2)

    def overlaps(self, other: "Rect") -> bool:
        return (
            self.x0 < other.x1
            and other.x0 < self.x1
            and self.y0 < other.y1
            and other.y0 < self.y1
        )

    def meets_vertical(self, x, y_low, y_high) -> bool:
        """whether the open rectangle meets the vertical segment"""
        return self.x0 < x < self.x1 and y_low < self.y1 and self.y0 < y_high


@dataclass(frozen=True)
class ClausePlacement:
    clause: Clause
    rect: Rect
    # one vertical edge abscissa per clause variable
    edges: Tuple[Fraction, Fraction, Fraction]

    @property
    def base(self) -> Fraction:
        """y of the clause base measured away from the variable row"""
        return Fraction(constants.CLAUSE_LEVEL_HEIGHT * (self.clause.level - 1))


@dataclass(frozen=True)
class Embedding:
    variables: Dict[str, Rect]
    clauses: Tuple[ClausePlacement, ...] = field(default_factory=tuple)

    def center(self, variable: str) -> Fraction:
        return self.variables[variable].centroid[0]


def variable_rect(center, width=constants.VARIABLE_WIDTH) -> Rect:
    half_w = Fraction(width, 2)
    half_h = Fraction(constants.VARIABLE_HEIGHT, 2)
    return Rect(center - half_w, -half_h, center + half_w, half_h)


def _span(order: Mapping[str, int], clause: Clause) -> Tuple[int, int]:
    return order[clause.variables[0]], order[clause.variables[2]]


def _nests(order: Mapping[str, int], inner: Clause, outer: Clause) -> bool:
    """whether ``inner`` fits between two consecutive edges of ``outer``"""
    first, last = _span(order, inner)
    stops = [order[v] for v in outer.variables]
    return any(a <= first and last <= b for a, b in zip(stops, stops[1:]))


def nest_levels(formula: RpmFormula) -> Tuple[Clause, ...]:
    """Lifts every clause one level above the clauses nested under it.

    A clause keeps its written level when that is higher. Two clauses of
    the same sign that neither nest nor sit side by side cannot be drawn
    with rectangles and raise ValueError.
    """
    order = {v: k for k, v in enumerate(formula.variables)}
    clauses = formula.clauses
    for a, b in combinations(clauses, 2):
        if a.polarity is not b.polarity:
            continue
        (a0, a1), (b0, b1) = _span(order, a), _span(order, b)
        if a1 <= b0 or b1 <= a0 or _nests(order, a, b) or _nests(order, b, a):
            continue
        raise ValueError(f"clauses '{a}' and '{b}' interleave")

    levels: Dict[int, int] = {}
    widths = {k: _span(order, c)[1] - _span(order, c)[0] for k, c in enumerate(clauses)}
    for k in sorted(widths, key=widths.__getitem__):
        clause = clauses[k]
        inner = [
            levels[j] + 1
            for j in levels
            if clauses[j].polarity is clause.polarity and _nests(order, clauses[j], clause)
        ]
        levels[k] = max([clause.level] + inner)
    return tuple(replace(c, level=levels[k]) for k, c in enumerate(clauses))


def _side_key(entry: Tuple[Clause, int]):
    # edges closing a clause, then the middle one, then edges opening a clause
    clause, role = entry
    if role == 2:
        return (0, clause.level)
    if role == 1:
        return (1, 0)
    return (2, -clause.level)


def _top_bounds(clause: Clause, role: int) -> Tuple[int, int]:
    """lowest and highest top of a clause edge, from the clause base"""
    base = constants.CLAUSE_LEVEL_HEIGHT * (clause.level - 1)
    if role == 2:
        return base + 2 * constants.CLAUSE_ROW_HIGH, base + constants.CLAUSE_HEIGHT
    return base + constants.CLAUSE_ROW_HIGH, base + constants.CLAUSE_ROW_HIGH


def _chain_offsets(bounds: List[Tuple[int, int]]) -> List[int]:
    """Distances from a variable corner of the edges leaving it in turn.

    Seen from the corner, every top is steeper than the tops after it,
    which keeps the tops of a side in concave position.
    """
    corner = Fraction(constants.VARIABLE_HEIGHT, 2)
    offsets: List[int] = []
    for low, high in bounds:
        least = offsets[-1] + constants.CONNECTION_GAP if offsets else constants.CORNER_GAP
        for (near_low, _), d in zip(bounds, offsets):
            least = max(least, math.floor(d * (high - corner) / (near_low - corner)) + 1)
        offsets.append(least)
    return offsets


def _side_layout(side: List[Tuple[Clause, int]]) -> Tuple[List[int], List[int], int]:
    """offsets of the red-foot edges from the left corner, of the blue-foot
    edges from the right corner, and the least width they need"""
    reds = [_top_bounds(c, r) for c, r in side if r != 0]
    blues = [_top_bounds(c, r) for c, r in side if r == 0]
    left = _chain_offsets(reds)
    right = _chain_offsets(blues[::-1])[::-1]
    if len(side) < 2:
        return left, right, constants.VARIABLE_WIDTH
    if left and right:
        need = left[-1] + constants.CONNECTION_GAP + right[0]
    else:
        need = (left or right)[-1 if left else 0] + constants.CORNER_GAP
    return left, right, max(constants.VARIABLE_WIDTH, need)


def derive_embedding(formula: RpmFormula) -> Embedding:
    """Lays the variables along the x-axis in formula order and stacks the
    clauses by nesting level, positive ones above and negative ones below.

    A side of a variable shared by several clauses is widened until its
    edges can leave the variable in turn; a lone edge enters just right of
    the variable centre.
    """
    clauses = nest_levels(formula)
    sides: Dict[Tuple[str, Polarity], List[Tuple[int, int]]] = {}
    for index, clause in enumerate(clauses):
        for role, v in enumerate(clause.variables):
            sides.setdefault((v, clause.polarity), []).append((index, role))
    for side in sides.values():
        side.sort(key=lambda e: _side_key((clauses[e[0]], e[1])))

    layouts = {
        key: _side_layout([(clauses[k], r) for k, r in side])
        for key, side in sides.items()
    }
    variables: Dict[str, Rect] = {}
    left_edge = None
    for v in formula.variables:
        width = max(
            [constants.VARIABLE_WIDTH]
            + [layouts[(v, p)][2] for p in Polarity if (v, p) in layouts]
        )
        if left_edge is None:
            left_edge = -Fraction(width, 2)
        variables[v] = variable_rect(left_edge + Fraction(width, 2), width)
        left_edge += width + constants.VARIABLE_GAP

    edges: Dict[Tuple[int, int], Fraction] = {}
    for (v, polarity), side in sides.items():
        rect = variables[v]
        if len(side) == 1:
            edges[side[0]] = rect.centroid[0] + constants.CONNECTION_OFFSET
            continue
        left, right, _ = layouts[(v, polarity)]
        xs = [rect.x0 + d for d in left] + [rect.x1 - d for d in right]
        for entry, x in zip(side, xs):
            edges[entry] = x

    half_h = Fraction(constants.VARIABLE_HEIGHT, 2)
    placements = []
    for index, clause in enumerate(clauses):
        xs = tuple(edges[(index, role)] for role in range(3))
        base = constants.CLAUSE_LEVEL_HEIGHT * (clause.level - 1)
        low = half_h + base + constants.CLAUSE_ROW_LOW // 2
        high = Fraction(base + constants.CLAUSE_HEIGHT)
        if clause.polarity is Polarity.NEGATIVE:
            low, high = -high, -low
        margin = constants.CLAUSE_MARGIN
        rect = Rect(xs[0] - margin, low, xs[2] + margin, high)
        placements.append(ClausePlacement(clause, rect, xs))
    return Embedding(variables, tuple(placements))


def validate_embedding(formula: RpmFormula, embedding: Embedding) -> ValidationReport:
    """Checks the layout conventions: variables centred on the x-axis, no
    overlapping rectangles, clauses on the side of their polarity, and
    vertical edges that meet no rectangle but their own two."""
    report = ValidationReport()
    missing = set(formula.variables) - set(embedding.variables)
    if missing:
        report.add(f"variables without a rectangle: {sorted(missing)}")
        return report

    for name, rect in embedding.variables.items():
        if rect.centroid[1] != 0:
            report.add(f"variable {name} is not centred on the x-axis")

    rects = [(f"variable {v}", r) for v, r in embedding.variables.items()]
    rects += [(f"clause '{p.clause}'", p.rect) for p in embedding.clauses]
    for (a, first), (b, second) in combinations(rects, 2):
        if first.overlaps(second):
            report.add(f"{a} overlaps {b}")

    seen_edges = {}
    for placement in embedding.clauses:
        clause, rect = placement.clause, placement.rect
        positive = clause.polarity is Polarity.POSITIVE
        if positive and rect.y0 <= 0 or not positive and rect.y1 >= 0:
            report.add(f"clause '{clause}' is on the wrong side of the variables")
        for variable, x in zip(clause.variables, placement.edges):
            own = embedding.variables[variable]
            if not (own.x0 < x < own.x1 and rect.x0 <= x <= rect.x1):
                report.add(f"edge of '{clause}' at x={x} misses its rectangles")
                continue
            low, high = (own.y1, rect.y0) if positive else (rect.y1, own.y0)
            for name, other in rects:
                if other is own or other is rect:
                    continue
                if other.meets_vertical(x, low, high):
                    report.add(f"edge of '{clause}' at x={x} crosses {name}")
            key = (x, clause.polarity)
            if key in seen_edges:
                report.add(
                    f"edges of '{seen_edges[key]}' and '{clause}' share x={x}"
                )
            seen_edges[key] = clause
    return report
