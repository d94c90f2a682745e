"""
Projection potentials of red-on-a-line matchings.

Every blue point is projected from a focal red point onto a horizontal line
above all the points. A pair of segments straddling the focal red point is
counted when the projected pair crosses. Summed over the focal points, the
count drops by at least two at every flip, which bounds the length of any
untangle sequence.

Red points are ranked left to right; ``k``, ``i`` and ``j`` are red indices
and the straddling relation is read on their ranks.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from untangle.errors import LineNotAbove, NotAKPair, NotRedOnLine, ProjectedTie
from untangle.geometry import Point, Segment, blue, segments_cross
from untangle.matching import Flip, Matching, apply_flip

SYMBOL_ORDER = {"L": 0, "C": 1, "R": 2}


@dataclass(frozen=True)
class ProjectedConfig:
    k: int
    line_y: Fraction
    # projected x per blue index
    images: Tuple[Fraction, ...]

    def image_point(self, blue_index: int) -> Point:
        return blue(self.images[blue_index], self.line_y)


@dataclass(frozen=True)
class InversionWord:
    symbols: str

    def __str__(self) -> str:
        return self.symbols

    def __len__(self) -> int:
        return len(self.symbols)


def _require_red_on_line(matching: Matching):
    if not matching.is_red_on_line():
        raise NotRedOnLine("potentials are defined on red-on-a-line matchings")


def default_line_y(matching: Matching) -> Fraction:
    return max(p.y for p in matching.points) + 1


def red_ranks(matching: Matching) -> List[int]:
    """1-based left-to-right rank of every red index"""
    order = sorted(range(matching.n), key=lambda i: matching.reds[i].x)
    ranks = [0] * matching.n
    for rank, i in enumerate(order, start=1):
        ranks[i] = rank
    return ranks


def phi_k_bound(n: int, rank: int) -> int:
    """number of pairs straddling the red point of the given rank"""
    return rank * (n + 1) - rank * rank - 1


def phi_total_bound(n: int) -> Fraction:
    return Fraction(n * (n - 1) // 2 * (n + 4), 3)


def project_tk(
    matching: Matching, k: int, line_y: Optional[Fraction] = None
) -> ProjectedConfig:
    _require_red_on_line(matching)
    if line_y is None:
        line_y = default_line_y(matching)
    line_y = Fraction(line_y)
    if any(p.y >= line_y for p in matching.points):
        raise LineNotAbove(f"line y = {line_y} is not above every point")
    focal = matching.reds[k]
    images = tuple(
        focal.x + (b.x - focal.x) * line_y / b.y for b in matching.blues
    )
    return ProjectedConfig(k, line_y, images)


def is_k_pair(matching: Matching, k: int, i: int, j: int) -> bool:
    if i == j:
        return False
    ranks = red_ranks(matching)
    low, high = sorted((ranks[i], ranks[j]))
    return low <= ranks[k] <= high


def _observed(matching: Matching, projected: ProjectedConfig, i: int, j: int) -> bool:
    first = (matching.reds[i], projected.image_point(matching.mate[i]))
    second = (matching.reds[j], projected.image_point(matching.mate[j]))

    return segments_cross(Segment(*first), Segment(*second))


def k_observed_crossing(
    matching: Matching, k: int, i: int, j: int, line_y: Optional[Fraction] = None
) -> bool:
    if not is_k_pair(matching, k, i, j):
        raise NotAKPair(f"({i}, {j}) does not straddle red {k}")
    return _observed(matching, project_tk(matching, k, line_y), i, j)


def phi_k(matching: Matching, k: int, line_y: Optional[Fraction] = None) -> int:
    _require_red_on_line(matching)
    projected = project_tk(matching, k, line_y)
    ranks = red_ranks(matching)
    count = 0
    for i, j in combinations(range(matching.n), 2):
        low, high = sorted((ranks[i], ranks[j]))
        if low <= ranks[k] <= high and _observed(matching, projected, i, j):
            count += 1
    return count


def inversion_word(
    matching: Matching, k: int, line_y: Optional[Fraction] = None
) -> InversionWord:
    projected = project_tk(matching, k, line_y)
    if len(set(projected.images)) < matching.n:
        raise ProjectedTie(f"two blue points share a projected image from red {k}")
    ranks = red_ranks(matching)
    owner = {matching.mate[i]: i for i in range(matching.n)}
    symbols = []
    for b in sorted(range(matching.n), key=lambda b: projected.images[b]):
        rank = ranks[owner[b]]
        if rank < ranks[k]:
            symbols.append("L")
        elif rank > ranks[k]:
            symbols.append("R")
        else:
            symbols.append("C")
    return InversionWord("".join(symbols))


def count_inversions(word: InversionWord) -> int:
    """pairs of positions whose symbols are out of the order L < C < R"""
    values = [SYMBOL_ORDER[s] for s in str(word)]
    return sum(1 for a, b in combinations(range(len(values)), 2) if values[b] < values[a])


def phi_profile(matching: Matching) -> Tuple[int, ...]:
    return tuple(phi_k(matching, k) for k in range(matching.n))


def phi_total(matching: Matching) -> int:
    return sum(phi_profile(matching))


def is_k_flip(matching: Matching, flip: Flip, k: int) -> bool:
    return is_k_pair(matching, k, flip.i, flip.j)


def flip_potential_drop(matching: Matching, flip: Flip) -> Dict[int, Tuple[int, int]]:
    """``phi_k`` before and after ``flip``, per red index"""

    after = apply_flip(matching, flip)
    return {
        k: (phi_k(matching, k), phi_k(after, k)) for k in range(matching.n)
    }
