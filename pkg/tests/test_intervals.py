from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tvg.errors import DomainError
from tvg.intervals import INF, Interval, IntervalSet, TimeSpec, first_difference


def pairs(*ps):
    return IntervalSet.from_pairs(ps)


def test_interval_rejects_empty_and_negative():
    with pytest.raises(DomainError):
        Interval(3, 3)
    with pytest.raises(DomainError):
        Interval(5, 2)
    with pytest.raises(DomainError):
        Interval(-1, 2)


def test_merge_overlapping_and_abutting():
    s = pairs((0, 2), (2, 4), (6, 8), (7, 10))
    assert s.pairs() == [[0, 4], [6, 10]]


def test_membership_and_bounds():
    s = pairs((1, 3), (5, 6))
    assert 1 in s and 2 in s and 5 in s
    assert 0 not in s and 3 not in s and 6 not in s
    assert s.min_start == 1 and s.max_end == 6
    assert s.total() == 3


def test_clip_and_shift():
    s = pairs((0, 4), (6, 9))
    assert s.clip(2, 7).pairs() == [[2, 4], [6, 7]]
    assert s.shift(3).pairs() == [[3, 7], [9, 12]]


def test_covers():
    s = pairs((2, 8))
    assert s.covers(2, 8)
    assert s.covers(3, 5)
    assert not s.covers(1, 3)
    assert not s.covers(7, 9)
    assert pairs((0, 2), (3, 5)).covers(4, 5)
    assert not pairs((0, 2), (3, 5)).covers(1, 4)


interval_lists = st.lists(
    st.tuples(st.integers(0, 30), st.integers(1, 10)).map(lambda p: (p[0], p[0] + p[1])),
    max_size=8,
)


@given(interval_lists)
@settings(max_examples=200)
def test_from_pairs_normalized_and_idempotent(raw):
    s = IntervalSet.from_pairs(raw)
    again = IntervalSet.from_pairs((iv.start, iv.end) for iv in s)
    assert s == again
    ends = None
    for iv in s:
        assert iv.start < iv.end
        if ends is not None:
            assert iv.start > ends  # disjoint and non-abutting
        ends = iv.end


@given(interval_lists, st.integers(0, 45))
@settings(max_examples=200)
def test_membership_matches_raw_union(raw, t):
    s = IntervalSet.from_pairs(raw)
    assert (t in s) == any(a <= t < b for a, b in raw)


@given(interval_lists, interval_lists)
@settings(max_examples=100)
def test_first_difference_matches_scan(raw_a, raw_b):
    a, b = IntervalSet.from_pairs(raw_a), IntervalSet.from_pairs(raw_b)
    hi = 50
    expected = next((t for t in range(hi) if (t in a) != (t in b)), None)
    assert first_difference(a, b, hi) == expected


def test_timespec_union_and_membership():
    spec = TimeSpec.from_pairs([(1, 3), (10, INF)])
    assert 1 in spec and 2 in spec and 3 not in spec
    assert 10 in spec and 1000 in spec
    merged = spec.union(TimeSpec.from_pairs([(3, 5)]))
    assert 3 in merged and 4 in merged
    assert merged.unbounded_from == 10


def test_timespec_bounded_past_unbounded_is_dropped():
    spec = TimeSpec.from_pairs([(20, 30), (5, INF)])
    assert spec.unbounded_from == 5
    assert not spec.bounded
