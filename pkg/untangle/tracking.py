"""
State tracking across flips.

A flip of segments ``i`` and ``j`` replaces two segments, so the pairs
``(s, i)`` and ``(s, j)`` of every other segment ``s`` have no canonical
successor. A tracking choice assigns them one: ``STRAIGHT`` keeps the pair
attached to the same red point, ``SWAPPED`` exchanges the two.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from untangle.errors import NoValidChoice, NotRedOnLine, SpectatorIsFlipping
from untangle.geometry import Point, orient
from untangle.logger import logger
from untangle.matching import Flip, Matching, PairState, apply_flip, pair_state

X, H, T = PairState.X, PairState.H, PairState.T


class TrackingChoice(Enum):
    STRAIGHT = "straight"
    SWAPPED = "swapped"


@dataclass(frozen=True)
class SpectatorProfile:
    s: int
    before: Tuple[PairState, PairState]
    after: Tuple[PairState, PairState]

    def transitions(self, choice: TrackingChoice) -> Tuple[Tuple[PairState, PairState], ...]:
        if choice is TrackingChoice.STRAIGHT:
            return ((self.before[0], self.after[0]), (self.before[1], self.after[1]))
        return ((self.before[0], self.after[1]), (self.before[1], self.after[0]))

    def __str__(self) -> str:
        return "".join(s.value for s in self.before) + "->" + "".join(
            s.value for s in self.after
        )


@dataclass(frozen=True)
class UpperCone:
    """wedge above ``apex`` bounded by the extensions of the two segments"""

    apex: Point
    left_red: Point
    right_red: Point


@dataclass(frozen=True)
class ConeObstruction:
    """the spectator's blue point lies in an upper cone of the flip"""

    cone: UpperCone


def spectator_profile(matching: Matching, flip: Flip, s: int) -> SpectatorProfile:
    if s in (flip.i, flip.j):
        raise SpectatorIsFlipping(f"segment {s} takes part in flip {flip}")
    after = apply_flip(matching, flip)
    return SpectatorProfile(
        s,
        (pair_state(matching, s, flip.i), pair_state(matching, s, flip.j)),
        (pair_state(after, s, flip.i), pair_state(after, s, flip.j)),
    )


def _avoids(profile: SpectatorProfile, choice: TrackingChoice, forbidden) -> bool:
    return not any(t in forbidden for t in profile.transitions(choice))


def choose_avoid_HX(profile: SpectatorProfile) -> TrackingChoice:  # pylint: disable=invalid-name
    """a choice with no H -> X transition, STRAIGHT when both qualify"""
    for choice in TrackingChoice:
        if _avoids(profile, choice, {(H, X)}):
            return choice
    logger.warning("no tracking choice avoids H -> X for %s", profile)
    raise NoValidChoice(str(profile))


def is_forbidden_profile(profile: SpectatorProfile) -> bool:
    """profiles that no geometry can produce: HH -> X? and H? -> XX"""
    if profile.before == (H, H) and X in profile.after:
        return True
    return H in profile.before and profile.after == (X, X)


def _strict_side(a: Point, b: Point, p: Point) -> int:
    value = orient(a, b, p)
    return (value > 0) - (value < 0)


def upper_cone_contains(cone: UpperCone, p: Point) -> bool:
    """p is strictly beyond both boundary lines, as seen from the red line"""
    first = _strict_side(cone.left_red, cone.apex, p)
    second = _strict_side(cone.right_red, cone.apex, p)
    return (
        first != 0
        and second != 0
        and first == -_strict_side(cone.left_red, cone.apex, cone.right_red)
        and second == -_strict_side(cone.right_red, cone.apex, cone.left_red)
    )


def flip_cones(matching: Matching, flip: Flip) -> Tuple[UpperCone, UpperCone]:
    """the two upper cones of segment pairs of the flip sharing a blue point"""
    r1, r2 = matching.reds[flip.i], matching.reds[flip.j]
    left, right = (r1, r2) if r1.x < r2.x else (r2, r1)
    b1 = matching.blues[matching.mate[flip.i]]
    b2 = matching.blues[matching.mate[flip.j]]
    return UpperCone(b1, left, right), UpperCone(b2, left, right)


def choose_avoid_HX_HT(  # pylint: disable=invalid-name
    matching: Matching, flip: Flip, s: int
) -> Union[TrackingChoice, ConeObstruction]:
    if not matching.is_red_on_line():
        raise NotRedOnLine("upper cones are defined for red-on-a-line matchings")
    spectator_blue = matching.blues[matching.mate[s]]
    for cone in flip_cones(matching, flip):
        if upper_cone_contains(cone, spectator_blue):
            return ConeObstruction(cone)
    profile = spectator_profile(matching, flip, s)
    for choice in TrackingChoice:
        if _avoids(profile, choice, {(H, X), (H, T)}):
            return choice
    logger.warning("no tracking choice avoids H -> T outside the cones: %s", profile)
    raise NoValidChoice(str(profile))


@dataclass
class TrackingTrace:
    """state trajectory of every pair index along a flip sequence"""

    trajectories: Dict[Tuple[int, int], List[PairState]] = field(default_factory=dict)
    transitions: Counter = field(default_factory=Counter)
    ht_events: List[dict] = field(default_factory=list)

    def h_counts(self) -> List[int]:
        length = len(next(iter(self.trajectories.values()), []))
        return [
            sum(1 for states in self.trajectories.values() if states[t] is H)
            for t in range(length)
        ]

    def contains_pattern(self, pattern: Sequence[PairState]) -> bool:
        """some trajectory, with repeats collapsed, contains ``pattern`` contiguously"""
        for states in self.trajectories.values():
            collapsed = [s for k, s in enumerate(states) if k == 0 or states[k - 1] is not s]
            for start in range(len(collapsed) - len(pattern) + 1):
                if collapsed[start : start + len(pattern)] == list(pattern):
                    return True
        return False


def _spectator_choice(matching: Matching, flip: Flip, s: int, red_on_line: bool):
    profile = spectator_profile(matching, flip, s)
    if red_on_line:
        try:
            choice = choose_avoid_HX_HT(matching, flip, s)
        except NoValidChoice:
            return profile, choose_avoid_HX(profile), None
        if isinstance(choice, TrackingChoice):
            return profile, choice, None
        return profile, choose_avoid_HX(profile), choice.cone
    return profile, choose_avoid_HX(profile), None


def track_sequence(matching: Matching, steps: Sequence[Flip]) -> TrackingTrace:
    """Follows every pair index through ``steps``.

    Each spectator prefers a choice avoiding H -> T and H -> X and falls back to
    avoiding H -> X alone; every H -> T that remains is logged with its cone.
    """
    red_on_line = matching.is_red_on_line()
    # slot: pair index -> red pair it currently designates
    slots = {pair: pair for pair in combinations(range(matching.n), 2)}
    trace = TrackingTrace(
        trajectories={pair: [pair_state(matching, *pair)] for pair in slots}
    )
    current = matching
    for step, flip in enumerate(steps):
        flip = Flip(*flip).normalized()
        after = apply_flip(current, flip)
        owner = {red_pair: index for index, red_pair in slots.items()}
        for s in range(current.n):
            if s in (flip.i, flip.j):
                continue
            profile, choice, cone = _spectator_choice(current, flip, s, red_on_line)
            with_i = owner[tuple(sorted((s, flip.i)))]
            with_j = owner[tuple(sorted((s, flip.j)))]
            if choice is TrackingChoice.SWAPPED:
                slots[with_i], slots[with_j] = slots[with_j], slots[with_i]
            for before, after_state in profile.transitions(choice):
                if (before, after_state) == (H, T):
                    trace.ht_events.append(
                        {"step": step, "spectator": s, "flip": flip, "cone": cone}
                    )
                    logger.debug("H -> T at step %s for spectator %s", step, s)
        for index, red_pair in slots.items():
            state = pair_state(after, *red_pair)
            trace.transitions[f"{trace.trajectories[index][-1].value}->{state.value}"] += 1
            trace.trajectories[index].append(state)
        current = after
    return trace


def nonH_counts(trace: TrackingTrace) -> List[int]:  # pylint: disable=invalid-name
    total = len(trace.trajectories)
    return [total - h for h in trace.h_counts()]


def convex_tracking_check(matching: Matching, steps: Sequence[Flip]) -> Optional[str]:
    """None when no T appears and the H count rises at every flip, else the reason"""
    trace = track_sequence(matching, steps)
    if any(T in states for states in trace.trajectories.values()):
        return "a T state appears in convex position"
    counts = trace.h_counts()
    for before, after in zip(counts, counts[1:]):
        if after <= before:
            return f"H count did not rise: {before} -> {after}"
    return None
