import pytest

from untangle.enumerator import SequenceEnumerator
from untangle.errors import NotDerivedFence, WrongPointSet
from untangle.fence import (
    CrossingKind,
    classify_crossing,
    column,
    counter_clockwise_labels,
    fence_lower_bound,
    is_derived_fence,
    make_fence,
)
from untangle.geometry import convex_position
from untangle.matching import apply_flip, crossing_count, crossing_pairs


def test_labels_and_columns():
    assert counter_clockwise_labels(2) == [
        ("q", 6), ("q", 4), ("q", 3), ("q", 1), ("p", 1), ("p", 3), ("p", 4), ("p", 6)
    ]
    assert [column(i) for i in (1, 3, 4, 6)] == [1, 2, 2, 3]


@pytest.mark.parametrize("m", [2, 3])
def test_make_fence(m):
    matching, descriptor = make_fence(m)
    assert matching.n == 2 * m
    assert convex_position(matching.points)
    assert crossing_count(matching) == fence_lower_bound(m)
    assert is_derived_fence(matching, descriptor)
    with pytest.raises(ValueError):
        make_fence(1)


@pytest.mark.parametrize("m", [2, 3])
def test_every_sequence_is_rigid(m):
    matching, descriptor = make_fence(m)
    count = 0
    for sequence in SequenceEnumerator(matching):
        count += 1
        assert len(sequence) == 3 * m - 2
        current = matching
        for flip in sequence.steps:
            before = crossing_count(current)
            current = apply_flip(current, flip)
            assert crossing_count(current) == before - 1
            assert is_derived_fence(current, descriptor)
    assert count > 1


def test_classify_two_fence():
    matching, descriptor = make_fence(2)
    kinds = {
        pair: classify_crossing(matching, descriptor, *pair)
        for pair in crossing_pairs(matching)
    }
    assert set(kinds.values()) <= {CrossingKind.END, CrossingKind.MIDDLE}
    assert len(kinds) == 4
    with pytest.raises(ValueError):
        uncrossed = next(
            (i, j)
            for i in range(matching.n)
            for j in range(i + 1, matching.n)
            if (i, j) not in kinds
        )
        classify_crossing(matching, descriptor, *uncrossed)


def test_wrong_point_set():
    matching, descriptor = make_fence(2)
    other, _ = make_fence(3)
    with pytest.raises(WrongPointSet):
        is_derived_fence(other, descriptor)


def test_underived_matching_is_refused():
    matching, descriptor = make_fence(2)
    # reds 0 and 2 do not cross; exchanging their partners breaks the column statements
    assert not matching.crosses(0, 2)
    mate = list(matching.mate)
    mate[0], mate[2] = mate[2], mate[0]
    broken = matching.with_mate(mate)
    assert not is_derived_fence(broken, descriptor)
    with pytest.raises(NotDerivedFence):
        classify_crossing(broken, descriptor, 0, 1)
