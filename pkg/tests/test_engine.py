from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from untangle.engine import (
    FlipSequence,
    Policy,
    PolicyKind,
    dag_lengths,
    longest_untangle,
    naive_longest,
    reconfiguration_graph,
    run_greedy_top,
    run_policy,
    shortest_untangle,
    verify_sequence,
)
from untangle.errors import BudgetExhausted, NotCrossing
from untangle.fence import make_fence
from untangle.generators import SampleKind, make_butterfly, make_star, sample_random
from untangle.geometry import blue, red
from untangle.matching import Flip, Matching, is_crossing_free, nonH_count

seeds = st.integers(min_value=0, max_value=2**31 - 1)


def x_shape() -> Matching:
    return Matching([red(0, 0), red(2, 0)], [blue(0, 2), blue(2, 3)], [1, 0])


def test_flip_sequence_replays():
    sequence = FlipSequence(x_shape(), [(0, 1)])
    assert len(sequence) == 1
    assert sequence.complete
    assert sequence.end.mate == (0, 1)
    assert len(sequence.matchings()) == 2
    with pytest.raises(NotCrossing):
        FlipSequence(x_shape(), [(0, 1), (0, 1)])


def test_greedy_top():
    assert len(run_greedy_top(x_shape())) == 1
    butterfly = make_butterfly(3, perturb=True)
    sequence = run_greedy_top(butterfly)
    assert len(sequence) <= nonH_count(butterfly) == 15
    assert sequence.complete
    star = make_star(5)
    assert len(run_greedy_top(star)) <= comb(5, 2)


def check_greedy_bound(seed, n):
    matching = sample_random(SampleKind.RED_ON_LINE, n, seed)
    sequence = run_greedy_top(matching)
    assert is_crossing_free(sequence.end)
    assert len(sequence) <= nonH_count(matching) <= comb(n, 2)


@settings(max_examples=100)
@given(seed=seeds, n=st.integers(min_value=1, max_value=8))
def test_greedy_bound_on_random_instances(seed, n):
    check_greedy_bound(seed, n)


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(seed=seeds, n=st.integers(min_value=1, max_value=8))
def test_greedy_bound_thousand_samples(seed, n):
    check_greedy_bound(seed, n)


def test_policies():
    untangled = x_shape().with_mate([0, 1])
    assert len(run_policy(untangled)) == 0
    fence, _ = make_fence(2)
    for policy in (Policy.first_found(), Policy.random(7), Policy.top_most()):
        assert len(run_policy(fence, policy)) == 4
    sequence = run_policy(make_star(4), Policy.random(0))
    assert len(sequence) <= comb(4, 2)
    assert sequence.complete


def test_policy_from_name():
    assert Policy.from_name("random", 3) == Policy(PolicyKind.RANDOM, 3)
    assert Policy.from_name("top-most", 3).seed is None
    with pytest.raises(ValueError):
        Policy.from_name("bogus")


def test_random_policy_is_deterministic():
    matching = sample_random(SampleKind.GENERAL, 6, 11)
    first = run_policy(matching, Policy.random(5))
    second = run_policy(matching, Policy.random(5))
    assert first.steps == second.steps


def test_shortest():
    assert shortest_untangle(x_shape()).length == 1
    assert shortest_untangle(x_shape().with_mate([0, 1])).length == 0
    fence, _ = make_fence(2)
    result = shortest_untangle(fence)
    assert result.length == 4
    assert result.witness.complete
    with pytest.raises(BudgetExhausted) as info:
        shortest_untangle(make_star(5), budget=2)
    assert info.value.explored == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_longest_star(n):
    result = longest_untangle(make_star(n))
    assert result.length == comb(n, 2)
    assert result.witness.complete


def test_longest_fence_and_x_shape():
    assert longest_untangle(x_shape()).length == 1
    fence, _ = make_fence(2)
    assert longest_untangle(fence).length == 4


@pytest.mark.parametrize("workers", [1, 4])
def test_longest_workers_agree(workers):
    matching = sample_random(SampleKind.GENERAL, 5, 3)
    assert longest_untangle(matching, workers=workers).length == naive_longest(matching)


def test_verify_sequence():
    butterfly = make_butterfly(3)
    report = verify_sequence(x_shape(), [Flip(0, 1), Flip(0, 1)])
    assert not report.valid
    assert report.first_invalid == 1
    report = verify_sequence(x_shape().with_mate([0, 1]), [])
    assert report.valid and report.complete
    report = verify_sequence(butterfly, run_policy(butterfly).steps)
    assert report.complete
    assert len(report.crossing_deltas) == report.length


@settings(max_examples=20)
@given(seed=seeds, n=st.integers(min_value=2, max_value=5))
def test_dag_lengths_match_searches(seed, n):
    matching = sample_random(SampleKind.GENERAL, n, seed)
    graph = reconfiguration_graph(matching)
    shortest, longest = dag_lengths(graph, matching.mate)
    assert shortest == shortest_untangle(matching).length
    assert longest == longest_untangle(matching).length
