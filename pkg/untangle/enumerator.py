"""
Iterator over every maximal flip sequence of a matching
"""
from typing import Iterator, List, Optional

from untangle import constants
from untangle.engine import FlipSequence, Mate, available_flips, swap_mate
from untangle.logger import logger
from untangle.matching import Flip, Matching


class SequenceEnumerator:
    """Iterator over the untangle sequences starting at ``matching``.

    Sequences are produced lazily by a depth-first walk over the ordered flip
    choices, each exactly once. After ``limit`` sequences the walk stops and
    ``truncated`` is set.
    """

    def __init__(
        self,
        matching: Matching,
        limit: Optional[int] = constants.DEFAULT_ENUMERATION_LIMIT,
        log_interval: Optional[int] = None,
    ):
        self.matching = matching
        self.limit = limit
        self.log_interval = log_interval
        self.truncated = False
        self._processed_count = 0
        self._walk = self._sequences()

    def __iter__(self):
        logger.debug("enumerating sequences of a %s-segment matching", self.matching.n)
        return self

    @property
    def processed_count(self):
        return self._processed_count

    def __next__(self) -> FlipSequence:
        if self.limit is not None and self._processed_count >= self.limit:
            # only a pending sequence makes the enumeration incomplete
            if next(self._walk, None) is not None:
                self.truncated = True
                logger.warning("enumeration truncated at %s sequences", self.limit)
            raise StopIteration
        steps = next(self._walk)
        self._processed_count += 1
        if self.log_interval and self.processed_count % self.log_interval == 0:
            logger.info("enumerated: %s sequences", self.processed_count)
        return FlipSequence(self.matching, steps)

    def _sequences(self) -> Iterator[List[Flip]]:
        start: Mate = self.matching.mate
        path: List[Flip] = []
        stack = [iter(available_flips(self.matching, start))]
        mates = [start]
        if not available_flips(self.matching, start):
            yield []
            return
        while stack:
            flip = next(stack[-1], None)
            if flip is None:
                stack.pop()
                mates.pop()
                if path:
                    path.pop()
                continue
            child = swap_mate(mates[-1], flip)
            path.append(flip)
            children = available_flips(self.matching, child)
            if not children:
                yield list(path)
                path.pop()
                continue
            stack.append(iter(children))
            mates.append(child)


def enumerate_sequences(
    matching: Matching, limit: Optional[int] = constants.DEFAULT_ENUMERATION_LIMIT
) -> SequenceEnumerator:
    return SequenceEnumerator(matching, limit=limit)
