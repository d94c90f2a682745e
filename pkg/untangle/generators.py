"""
Star and butterfly constructions, their scripted untangle sequences and
random instance samplers.
"""

import random
from enum import Enum
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence

from untangle import constants
from untangle.engine import FlipSequence
from untangle.errors import PerturbationChangedStates, ScriptInvalidated
from untangle.geometry import blue, check_general_position, red
from untangle.logger import logger
from untangle.matching import Flip, Matching, apply_flip, is_crossing_free, state_matrix


class SampleKind(Enum):
    RED_ON_LINE = "red-on-line"
    CONVEX = "convex"
    GENERAL = "general"


def make_star(n: int, looks_at: Fraction = Fraction(0)) -> Matching:
    """Reds at ``looks_at + 1 .. looks_at + n`` on y = 0, blues on the line of
    slope -1 through ``(looks_at, 0)``, matched in reverse order so that every
    pair crosses."""
    if n < 1:
        raise ValueError("a star needs at least one segment")
    reds = [red(looks_at + i + 1, 0) for i in range(n)]
    # blue t sits at distance t along the ray of direction (-1, 1)
    blues = [blue(looks_at - t, t) for t in range(1, n + 1)]
    mate = [n - 1 - i for i in range(n)]
    return Matching(reds, blues, mate)


def _bubble_flips(matching: Matching, group: Sequence[int]) -> List[Flip]:
    """Flips adjacent crossing segments of ``group`` (reds sorted left to right)
    until none is left, as a bubble sort does with inversions."""
    order = sorted(group, key=lambda i: matching.reds[i].x)
    steps = []
    swapped = True
    while swapped:
        swapped = False
        for a, b in zip(order, order[1:]):
            if matching.crosses(a, b):
                flip = Flip(a, b)
                matching = apply_flip(matching, flip)
                steps.append(flip)
                swapped = True
    return steps


def scripted_star_sequence(star: Matching) -> FlipSequence:
    """the bubble-sort untangle sequence of a star, one flip per pair"""
    steps = _bubble_flips(star, range(star.n))
    return FlipSequence(star, steps)


def butterfly_epsilon(m: int) -> Fraction:
    exponent = max(
        constants.BUTTERFLY_EPSILON_MIN_EXPONENT, (32 * m * (m + 1) ** 2).bit_length()
    )
    return Fraction(1, 2**exponent)


def _butterfly_points(m: int):
    d = m + 1
    # red index = left-to-right rank: r'_m .. r'_1, r_1 .. r_m
    reds = [red(Fraction(-(m - p), d), 0) for p in range(m)]
    reds += [red(Fraction(i, d), 0) for i in range(1, m + 1)]
    # blue index = left-to-right rank: b_1 .. b_m, b'_m .. b'_1
    blues = [(i - d, d - i) for i in range(1, m + 1)]
    blues += [(d - i, d - i) for i in range(m, 0, -1)]
    # r'_i -> b'_i and r_i -> b_i
    mate = [m + p for p in range(m)] + list(range(m))
    return reds, blues, mate


def make_butterfly(m: int, perturb: bool = False) -> Matching:
    """Two fully crossing m-stars looking at the origin.

    With ``perturb`` the blue point of rank ``q`` is raised by ``(2m - q) * eps``
    so that blue heights become distinct, ``b_1`` being the highest; the pair
    state matrix must be unchanged.
    """
    if m < 1:
        raise ValueError("a butterfly needs m >= 1")
    reds, blue_xy, mate = _butterfly_points(m)
    exact = Matching(reds, [blue(x, y) for x, y in blue_xy], mate)
    if not perturb:
        return exact
    eps = butterfly_epsilon(m)
    shifted = [blue(x, y + (2 * m - q) * eps) for q, (x, y) in enumerate(blue_xy)]
    perturbed = Matching(reds, shifted, mate)
    if not _same_states_everywhere(exact, perturbed):
        logger.warning("perturbation of the %s-butterfly changed pair states", m)
        raise PerturbationChangedStates(f"{m}-butterfly, eps={eps}")
    return perturbed


def _same_states_everywhere(exact: Matching, perturbed: Matching) -> bool:
    return state_matrix(exact) == state_matrix(perturbed)


def butterfly_lower_bound(m: int) -> int:
    return 2 * comb(m, 2) + 2 * m * (m - 1) + m


def _innermost_crossing(matching: Matching, group: Sequence[int], toward_right: bool):
    pairs = [
        (a, b)
        for a in group
        for b in group
        if matching.reds[a].x < matching.reds[b].x and matching.crosses(a, b)
    ]
    if not pairs:
        return None
    if toward_right:
        return max(pairs, key=lambda p: (matching.reds[p[1]].x, matching.reds[p[0]].x))
    return min(pairs, key=lambda p: (matching.reds[p[0]].x, matching.reds[p[1]].x))


def _scripted_flip(matching: Matching, flip: Flip, steps: List[Flip]) -> Matching:
    if not matching.crosses(flip.i, flip.j):
        logger.warning("scripted flip %s is not a crossing pair", flip)
        raise ScriptInvalidated(f"flip {flip} at step {len(steps)}")
    steps.append(flip)
    return apply_flip(matching, flip)


def scripted_butterfly_sequence(butterfly: Matching) -> FlipSequence:
    """Bubble sorts both stars, then ``m`` times flips the two innermost
    segments and sweeps each half from the centre outwards."""
    m = butterfly.n // 2
    left, right = list(range(m)), list(range(m, 2 * m))
    steps: List[Flip] = []
    current = butterfly
    for group in (left, right):
        for flip in _bubble_flips(current, group):
            current = _scripted_flip(current, flip, steps)
    for _ in range(m):
        current = _scripted_flip(current, Flip(m - 1, m), steps)
        for group, toward_right in ((left, True), (right, False)):
            for _ in range(m - 1):
                pair = _innermost_crossing(current, group, toward_right)
                if pair is None:
                    raise ScriptInvalidated(f"no crossing left in half {group}")
                current = _scripted_flip(current, Flip(*pair), steps)
    if not is_crossing_free(current):
        raise ScriptInvalidated("scripted butterfly sequence does not end crossing-free")
    return FlipSequence(butterfly, steps)


def _distinct(rng: random.Random, count: int, low: int, high: int) -> List[int]:
    return rng.sample(range(low, high), count)


def _sample_red_on_line(rng: random.Random, n: int) -> Matching:
    bound = constants.RANDOM_COORD_RANGE
    xs = sorted(_distinct(rng, n, -bound, bound))
    heights = _distinct(rng, n, 1, bound)
    reds = [red(x, 0) for x in xs]
    blues = [blue(rng.randrange(-bound, bound), y) for y in heights]
    mate = list(range(n))
    rng.shuffle(mate)
    return Matching(reds, blues, mate)


def _sample_convex(rng: random.Random, n: int) -> Matching:
    # points of the parabola y = x^2 are in convex position, no three collinear
    xs = _distinct(rng, 2 * n, -constants.RANDOM_COORD_RANGE, constants.RANDOM_COORD_RANGE)
    points = [(Fraction(x), Fraction(x * x)) for x in xs]
    reds = [red(*p) for p in points[:n]]
    blues = [blue(*p) for p in points[n:]]
    mate = list(range(n))
    rng.shuffle(mate)
    return Matching(reds, blues, mate)


def _sample_general(rng: random.Random, n: int) -> Matching:
    bound = constants.RANDOM_COORD_RANGE
    reds = [red(rng.randrange(-bound, bound), rng.randrange(-bound, bound)) for _ in range(n)]
    blues = [blue(rng.randrange(-bound, bound), rng.randrange(-bound, bound)) for _ in range(n)]
    mate = list(range(n))
    rng.shuffle(mate)
    return Matching(reds, blues, mate)


_SAMPLERS = {
    SampleKind.RED_ON_LINE: _sample_red_on_line,
    SampleKind.CONVEX: _sample_convex,
    SampleKind.GENERAL: _sample_general,
}


def sample_random(kind: SampleKind, n: int, seed: Optional[int] = None) -> Matching:
    """A random matching of the given kind in general position, deterministic
    per seed. Red-on-a-line samples have distinct blue heights and reds indexed
    left to right."""
    if n < 1:
        raise ValueError("a matching needs at least one segment")
    rng = random.Random(seed)
    red_on_line = kind is SampleKind.RED_ON_LINE
    while True:
        matching = _SAMPLERS[kind](rng, n)
        if check_general_position(matching.points, red_on_line=red_on_line).valid:
            return matching
