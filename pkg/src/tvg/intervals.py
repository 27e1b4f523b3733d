"""Half-open integer intervals and normalized interval sets.

Ticks are non-negative Python ints (arbitrary precision, so finite arithmetic
never overflows). The single infinity used across the package is float("inf"),
kept only as a sentinel: every finite value in an Interval is an int.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from tvg.errors import DomainError

INF = float("inf")


def is_finite(t) -> bool:
    return t != INF


def check_tick(t, what: str = "tick") -> int:
    """Validate a finite non-negative tick value."""
    if isinstance(t, bool) or not isinstance(t, int):
        raise DomainError(f"{what} must be an integer, got {t!r}")
    if t < 0:
        raise DomainError(f"{what} must be non-negative, got {t}")
    return t


@dataclass(frozen=True)
class Interval:
    """Half-open [start, end) over non-negative ticks; end finite."""

    start: int
    end: int

    def __post_init__(self):
        check_tick(self.start, "interval start")
        check_tick(self.end, "interval end")
        if self.start >= self.end:
            raise DomainError(f"empty or inverted interval [{self.start}, {self.end})")

    def __contains__(self, t: int) -> bool:
        return self.start <= t < self.end

    @property
    def length(self) -> int:
        return self.end - self.start


def _merge(pairs: Iterable[tuple[int, int]]) -> tuple[Interval, ...]:
    """Sort, drop empties, merge overlapping and abutting intervals."""
    items = sorted((s, e) for s, e in pairs if s < e)
    out: list[list[int]] = []
    for s, e in items:
        if out and s <= out[-1][1]:
            out[-1][1] = max(out[-1][1], e)
        else:
            out.append([s, e])
    return tuple(Interval(s, e) for s, e in out)


@dataclass(frozen=True)
class IntervalSet:
    """Canonical union of disjoint, non-abutting, sorted half-open intervals."""

    intervals: tuple[Interval, ...] = ()

    def __post_init__(self):
        prev_end = None
        for iv in self.intervals:
            if prev_end is not None and iv.start <= prev_end:
                raise DomainError("interval set not normalized")
            prev_end = iv.end

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "IntervalSet":
        return cls(_merge(pairs))

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __contains__(self, t: int) -> bool:
        i = bisect_right(self._starts, t) - 1
        return i >= 0 and t < self.intervals[i].end

    @cached_property
    def _starts(self) -> list[int]:
        return [iv.start for iv in self.intervals]

    @property
    def min_start(self) -> int | None:
        return self.intervals[0].start if self.intervals else None

    @property
    def max_end(self) -> int | None:
        return self.intervals[-1].end if self.intervals else None

    def total(self) -> int:
        return sum(iv.length for iv in self.intervals)

    def pairs(self) -> list[list[int]]:
        return [[iv.start, iv.end] for iv in self.intervals]

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.from_pairs(
            [(iv.start, iv.end) for iv in self.intervals]
            + [(iv.start, iv.end) for iv in other.intervals]
        )

    def clip(self, lo: int, hi: int) -> "IntervalSet":
        """Intersection with the window [lo, hi)."""
        out = []
        for iv in self.intervals:
            s, e = max(iv.start, lo), min(iv.end, hi)
            if s < e:
                out.append((s, e))
        return IntervalSet.from_pairs(out)

    def shift(self, delta: int) -> "IntervalSet":
        return IntervalSet(tuple(Interval(iv.start + delta, iv.end + delta) for iv in self.intervals))

    def covers(self, lo: int, hi: int) -> bool:
        """True iff every tick of [lo, hi) is in the set."""
        if lo >= hi:
            return True
        i = bisect_right(self._starts, lo) - 1
        return i >= 0 and self.intervals[i].start <= lo and hi <= self.intervals[i].end


def first_difference(a: IntervalSet, b: IntervalSet, hi: int) -> int | None:
    """Smallest tick in [0, hi) where membership in the two sets differs.

    Boundary walk over both sets rather than a per-tick scan, so large
    comparison horizons stay cheap.
    """
    bounds = {0, hi}
    for s in (a, b):
        for iv in s:
            if iv.start < hi:
                bounds.add(iv.start)
            if iv.end < hi:
                bounds.add(iv.end)
    for t in sorted(bounds):
        if t >= hi:
            break
        if (t in a) != (t in b):
            return t
    return None


@dataclass(frozen=True)
class TimeSpec:
    """Finite union of presence intervals, optionally unbounded to the right.

    `bounded` holds the finite intervals; `unbounded_from` (if set) means every
    tick at or past it is included.
    """

    bounded: IntervalSet = IntervalSet(())
    unbounded_from: int | None = None

    def __post_init__(self):
        if self.unbounded_from is not None:
            check_tick(self.unbounded_from, "unbounded interval start")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int | float]]) -> "TimeSpec":
        """Build from (start, end) pairs where end may be INF."""
        bounded: list[tuple[int, int]] = []
        open_from: int | None = None
        for s, e in pairs:
            check_tick(s, "interval start")
            if e == INF:
                open_from = s if open_from is None else min(open_from, s)
            else:
                bounded.append((s, int(e)))
        spec = cls(IntervalSet.from_pairs(bounded), open_from)
        if spec.unbounded_from is not None:
            # Bounded content past the unbounded start is redundant.
            spec = cls(spec.bounded.clip(0, spec.unbounded_from), spec.unbounded_from)
        return spec

    @classmethod
    def empty(cls) -> "TimeSpec":
        return cls(IntervalSet(()), None)

    def __bool__(self) -> bool:
        return bool(self.bounded) or self.unbounded_from is not None

    def __contains__(self, t: int) -> bool:
        if self.unbounded_from is not None and t >= self.unbounded_from:
            return True
        return t in self.bounded

    def union(self, other: "TimeSpec") -> "TimeSpec":
        pairs: list[tuple[int, int | float]] = [(iv.start, iv.end) for iv in self.bounded]
        pairs += [(iv.start, iv.end) for iv in other.bounded]
        for uf in (self.unbounded_from, other.unbounded_from):
            if uf is not None:
                pairs.append((uf, INF))
        return TimeSpec.from_pairs(pairs)
