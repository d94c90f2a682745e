from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from untangle.engine import longest_untangle, verify_sequence
from untangle.generators import (
    SampleKind,
    butterfly_epsilon,
    butterfly_lower_bound,
    make_butterfly,
    make_star,
    sample_random,
    scripted_butterfly_sequence,
    scripted_star_sequence,
)
from untangle.geometry import check_general_position, convex_position
from untangle.matching import crossing_count, is_crossing_free, state_matrix

seeds = st.integers(min_value=0, max_value=2**31 - 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_scripted_star_length(n):
    star = make_star(n)
    assert crossing_count(star) == comb(n, 2)
    sequence = scripted_star_sequence(star)
    assert len(sequence) == comb(n, 2)
    assert sequence.complete


def test_star_looks_at_point():
    star = make_star(3, looks_at=Fraction(5))
    assert [p.x for p in star.reds] == [6, 7, 8]
    assert all(p.x + p.y == 5 for p in star.blues)
    with pytest.raises(ValueError):
        make_star(0)


@pytest.mark.parametrize("m", range(1, 7))
def test_scripted_butterfly_length(m):
    butterfly = make_butterfly(m)
    sequence = scripted_butterfly_sequence(butterfly)
    expected = Fraction(3, 2) * comb(2 * m, 2) - Fraction(m, 2)
    assert len(sequence) == butterfly_lower_bound(m) == expected
    assert verify_sequence(butterfly, sequence.steps).complete


def test_three_butterfly_beats_convex_bound():
    sequence = scripted_butterfly_sequence(make_butterfly(3))
    assert len(sequence) == 21 > comb(6, 2)


def test_butterfly_general_position():
    butterfly = make_butterfly(3)
    assert check_general_position(butterfly.points, red_on_line=True).valid
    assert butterfly.is_red_on_line()


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_perturbed_butterfly_keeps_states(m):
    exact = make_butterfly(m)
    perturbed = make_butterfly(m, perturb=True)
    assert state_matrix(exact) == state_matrix(perturbed)
    heights = [p.y for p in perturbed.blues]
    assert len(set(heights)) == len(heights)
    assert butterfly_epsilon(m) * 4 * m * m < 1


def test_butterfly_longest_two():
    butterfly = make_butterfly(2)
    assert longest_untangle(butterfly).length >= butterfly_lower_bound(2)


@settings(max_examples=60)
@given(seed=seeds, n=st.integers(min_value=1, max_value=8), kind=st.sampled_from(SampleKind))
def test_samples(seed, n, kind):
    matching = sample_random(kind, n, seed)
    assert matching.n == n
    red_on_line = kind is SampleKind.RED_ON_LINE
    assert check_general_position(matching.points, red_on_line=red_on_line).valid
    if kind is SampleKind.CONVEX:
        assert convex_position(matching.points)
    if red_on_line:
        xs = [p.x for p in matching.reds]
        assert xs == sorted(xs)
        heights = [p.y for p in matching.blues]
        assert len(set(heights)) == n
    assert sample_random(kind, n, seed) == matching


def test_sample_rejects_empty():
    with pytest.raises(ValueError):
        sample_random(SampleKind.GENERAL, 0)


def test_crossing_free_after_script():
    assert is_crossing_free(scripted_star_sequence(make_star(5)).end)
