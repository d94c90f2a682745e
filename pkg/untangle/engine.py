"""
Untangling algorithms and exact searches over the reconfiguration graph.

Search states are keyed on the ``mate`` permutation: every configuration
reachable by flips shares the same point arrays.
"""

import random
import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from untangle import constants
from untangle.errors import BudgetExhausted, NotCrossing
from untangle.logger import logger
from untangle.matching import (
    Flip,
    Matching,
    apply_flip,
    crossing_count,
    crossing_pairs,
    side_split,
    top_segment,
)

Mate = Tuple[int, ...]


@dataclass
class FlipSequence:
    """A start matching and the flips replayed from it.

    Replay happens at construction, so an instance is always valid.
    """

    start: Matching
    steps: List[Flip] = field(default_factory=list)

    def __post_init__(self):
        self.steps = [Flip(*step) for step in self.steps]
        current = self.start
        for step in self.steps:
            current = apply_flip(current, step)
        self._end = current

    @property
    def end(self) -> Matching:
        return self._end

    def __len__(self) -> int:
        return len(self.steps)

    def matchings(self) -> List[Matching]:
        """every configuration along the sequence, start and end included"""
        result = [self.start]
        for step in self.steps:
            result.append(apply_flip(result[-1], step))
        return result

    @property
    def complete(self) -> bool:
        return not crossing_pairs(self.end)


@dataclass
class SearchResult:
    length: int
    witness: FlipSequence
    explored: int


class PolicyKind(Enum):
    FIRST_FOUND = "first-found"
    RANDOM = "random"
    TOP_MOST = "top-most"


@dataclass(frozen=True)
class Policy:
    """how ``run_policy`` picks the next crossing pair"""

    kind: PolicyKind = PolicyKind.FIRST_FOUND
    seed: Optional[int] = None

    @classmethod
    def first_found(cls) -> "Policy":
        return cls(PolicyKind.FIRST_FOUND)

    @classmethod
    def random(cls, seed: int = 0) -> "Policy":
        return cls(PolicyKind.RANDOM, seed)

    @classmethod
    def top_most(cls) -> "Policy":
        return cls(PolicyKind.TOP_MOST)

    @classmethod
    def from_name(cls, name: str, seed: Optional[int] = None) -> "Policy":
        kind = PolicyKind(name)
        return cls(kind, seed if kind is PolicyKind.RANDOM else None)


def _blue_height(matching: Matching, i: int):
    return matching.blues[matching.mate[i]].y


def _greedy_part(matching: Matching, indices: Tuple[int, ...], steps: List[Flip]):
    """Runs the top-segment loop on the segments ``indices`` of ``matching``
    and recurses on both sides of the freed top segment."""
    while len(indices) > 1:
        local = matching.restrict(indices)
        top = indices[top_segment(local)]
        crossing = [j for j in indices if j != top and matching.crosses(top, j)]
        if not crossing:
            break
        partner = max(crossing, key=lambda j: _blue_height(matching, j))
        steps.append(Flip(top, partner))
        matching = apply_flip(matching, Flip(top, partner))
    if len(indices) <= 1:
        return matching
    local = matching.restrict(indices)
    top_local = top_segment(local)
    for part in side_split(local, top_local):
        if part.indices:
            matching = _greedy_part(
                matching, tuple(indices[k] for k in part.indices), steps
            )
    return matching


def run_greedy_top(matching: Matching) -> FlipSequence:
    """Flips the top segment with the topmost segment crossing it until the top
    segment is free, then untangles each side of its line independently."""
    steps: List[Flip] = []
    _greedy_part(matching, tuple(range(matching.n)), steps)
    sequence = FlipSequence(matching, steps)
    logger.debug("greedy top untangled %s segments in %s flips", matching.n, len(steps))
    return sequence


def _choose(matching: Matching, pairs: List[Tuple[int, int]], policy: Policy, rng):
    if policy.kind is PolicyKind.RANDOM:
        return rng.choice(pairs)
    if policy.kind is PolicyKind.TOP_MOST:
        return max(
            pairs,
            key=lambda p: sorted(
                (_blue_height(matching, p[0]), _blue_height(matching, p[1])),
                reverse=True,
            ),
        )
    return pairs[0]


def run_policy(matching: Matching, policy: Policy = Policy()) -> FlipSequence:
    """Flips crossing pairs picked by ``policy`` until crossing-free.

    Terminates because every flip strictly shortens the matching.
    """
    rng = random.Random(policy.seed)
    steps = []
    current = matching
    while True:
        pairs = sorted(crossing_pairs(current))
        if not pairs:
            break
        flip = Flip(*_choose(current, pairs, policy, rng))
        steps.append(flip)
        current = apply_flip(current, flip)
    return FlipSequence(matching, steps)


def available_flips(matching: Matching, mate: Mate) -> List[Flip]:
    current = matching.with_mate(mate)
    return [Flip(i, j) for i, j in sorted(crossing_pairs(current))]


def swap_mate(mate: Mate, flip: Flip) -> Mate:
    result = list(mate)
    result[flip.i], result[flip.j] = result[flip.j], result[flip.i]
    return tuple(result)


def shortest_untangle(
    matching: Matching, budget: int = constants.DEFAULT_BUDGET
) -> SearchResult:
    """exact distance to the crossing-free configurations, by breadth-first search"""
    parents: Dict[Mate, Optional[Tuple[Mate, Flip]]] = {matching.mate: None}
    queue = deque([matching.mate])
    while queue:
        mate = queue.popleft()
        flips = available_flips(matching, mate)
        if not flips:
            steps = []
            while parents[mate] is not None:
                mate, flip = parents[mate]
                steps.append(flip)
            steps.reverse()
            return SearchResult(len(steps), FlipSequence(matching, steps), len(parents))
        for flip in flips:
            child = swap_mate(mate, flip)
            if child in parents:
                continue
            parents[child] = (mate, flip)
            if len(parents) > budget:
                raise BudgetExhausted(len(parents))
            queue.append(child)
    # the reconfiguration graph is finite and acyclic, a sink is always reached
    raise AssertionError("breadth-first search ended without a sink")


class _LongestMemo:
    """longest distance to a sink per configuration, shared between workers"""

    def __init__(self, matching: Matching, budget: int, log_interval: int):
        self.matching = matching
        self.budget = budget
        self.log_interval = log_interval
        self.table: Dict[Mate, Tuple[int, Optional[Flip]]] = {}
        self.lock = threading.Lock()

    def insert(self, mate: Mate, value: Tuple[int, Optional[Flip]]):
        with self.lock:
            self.table.setdefault(mate, value)
            size = len(self.table)
        if size > self.budget:
            raise BudgetExhausted(size)
        if size % self.log_interval == 0:
            logger.info("explored: %s configurations", size)

    def longest(self, mate: Mate) -> int:
        # frame: [mate, remaining flips, best length, best flip, flip being explored]
        stack = [[mate, iter(available_flips(self.matching, mate)), 0, None, None]]
        while stack:
            frame = stack[-1]
            current, children = frame[0], frame[1]
            if frame[4] is None and current in self.table:
                stack.pop()
                continue
            if frame[4] is not None:
                value = self.table[swap_mate(current, frame[4])][0] + 1
                if value > frame[2]:
                    frame[2], frame[3] = value, frame[4]
                frame[4] = None
            for flip in children:
                child = swap_mate(current, flip)
                if child in self.table:
                    value = self.table[child][0] + 1
                    if value > frame[2]:
                        frame[2], frame[3] = value, flip
                    continue
                frame[4] = flip
                stack.append([child, iter(available_flips(self.matching, child)), 0, None, None])
                break
            else:
                stack.pop()
                self.insert(current, (frame[2], frame[3]))
        return self.table[mate][0]

    def witness(self, mate: Mate) -> List[Flip]:
        steps = []
        while self.table[mate][1] is not None:
            flip = self.table[mate][1]
            steps.append(flip)
            mate = swap_mate(mate, flip)
        return steps


def longest_untangle(
    matching: Matching,
    budget: int = constants.DEFAULT_BUDGET,
    workers: int = 1,
    log_interval: int = constants.DEFAULT_LOG_INTERVAL,
) -> SearchResult:
    """Exact longest untangle sequence by memoised depth-first search.

    With ``workers > 1`` the subtrees below the first flips are explored in
    parallel over one shared memo table; the result does not depend on it.
    """
    memo = _LongestMemo(matching, budget, log_interval)
    if workers > 1:
        children = [swap_mate(matching.mate, f) for f in available_flips(matching, matching.mate)]
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(memo.longest, child) for child in children]
            for future in as_completed(futures):
                future.result()
    memo.longest(matching.mate)
    steps = memo.witness(matching.mate)
    return SearchResult(len(steps), FlipSequence(matching, steps), len(memo.table))


def naive_longest(matching: Matching) -> int:
    """unmemoised longest sequence length, for cross-checking small instances"""
    flips = available_flips(matching, matching.mate)
    if not flips:
        return 0
    return 1 + max(naive_longest(apply_flip(matching, flip)) for flip in flips)


@dataclass
class VerificationReport:
    valid: bool
    length: int
    first_invalid: Optional[int]
    final_crossings: int
    crossing_deltas: List[int]

    @property
    def complete(self) -> bool:
        return self.valid and self.final_crossings == 0


def verify_sequence(matching: Matching, steps: Sequence[Flip]) -> VerificationReport:
    """replays ``steps`` and reports the first invalid one, if any"""
    current = matching
    crossings = crossing_count(current)
    deltas = []
    for index, step in enumerate(steps):
        try:
            current = apply_flip(current, Flip(*step))
        except NotCrossing:
            logger.warning("flip %s at step %s is not a crossing pair", step, index)
            return VerificationReport(False, len(steps), index, crossings, deltas)
        after = crossing_count(current)
        deltas.append(after - crossings)
        crossings = after
    return VerificationReport(True, len(steps), None, crossings, deltas)


def reconfiguration_graph(
    matching: Matching, budget: int = constants.DEFAULT_BUDGET
) -> nx.DiGraph:
    """the flips reachable from ``matching``, as a directed graph on mate tuples"""
    graph = nx.DiGraph()
    graph.add_node(matching.mate)
    queue = deque([matching.mate])
    while queue:
        mate = queue.popleft()
        for flip in available_flips(matching, mate):
            child = swap_mate(mate, flip)
            if child not in graph:
                if graph.number_of_nodes() >= budget:
                    raise BudgetExhausted(graph.number_of_nodes())
                queue.append(child)
            graph.add_edge(mate, child, flip=flip)
    return graph


def dag_lengths(graph: nx.DiGraph, start: Mate) -> Tuple[int, int]:
    """shortest and longest untangle lengths read off the reconfiguration graph"""
    distances = nx.single_source_shortest_path_length(graph, start)
    sinks = [node for node in graph if graph.out_degree(node) == 0]
    shortest = min(distances[sink] for sink in sinks)
    # every node is reachable from start, so start is the only source
    longest = nx.dag_longest_path_length(graph)
    return shortest, longest
