"""Eventually-periodic edge presence schedules.

A schedule is a finite transient interval set on [0, base) plus a pattern on
[0, period) repeated forever from `base`. This encoding keeps every eventual
property (missing edges, recurrence, usable runs) decidable while still
expressing everything the package needs: edges that die, edges that recur,
and arbitrary finite splices.
"""

from __future__ import annotations

from dataclasses import dataclass

from tvg.errors import DomainError
from tvg.intervals import INF, IntervalSet, check_tick


@dataclass(frozen=True)
class PresenceSchedule:
    """Presence(t) = transient(t) for t < base, else pattern((t - base) mod period).

    Instances are not automatically canonical; `normalize` produces the unique
    minimal-base, minimal-period form. Construction only checks confinement.
    """

    transient: IntervalSet
    base: int
    period: int
    pattern: IntervalSet

    def __post_init__(self):
        check_tick(self.base, "base")
        if not isinstance(self.period, int) or self.period < 1:
            raise DomainError(f"period must be a positive integer, got {self.period!r}")
        if self.transient and self.transient.max_end > self.base:
            raise DomainError("transient intervals must end at or before base")
        if self.pattern and self.pattern.max_end > self.period:
            raise DomainError("pattern intervals must end at or before period")

    @classmethod
    def make(cls, transient=(), base: int = 0, period: int = 1, pattern=()) -> "PresenceSchedule":
        """Build from (start, end) pairs and normalize."""
        sched = cls(IntervalSet.from_pairs(transient), base, period, IntervalSet.from_pairs(pattern))
        return normalize(sched)

    @classmethod
    def always(cls) -> "PresenceSchedule":
        return cls(IntervalSet.empty(), 0, 1, IntervalSet.from_pairs([(0, 1)]))

    def presence(self, t: int) -> bool:
        check_tick(t)
        if t < self.base:
            return t in self.transient
        return ((t - self.base) % self.period) in self.pattern

    @property
    def is_empty(self) -> bool:
        """True iff the edge is present at no time at all."""
        return not self.transient and not self.pattern

    @property
    def eventually_missing(self) -> bool:
        """True (on canonical schedules) iff the edge appears finitely often."""
        return not self.pattern

    def last_presence(self) -> int | float:
        """Last tick the edge is present; INF if it recurs, -1 if never."""
        if self.pattern:
            return INF
        if self.transient:
            return self.transient.max_end - 1
        return -1

    def unroll(self, lo: int, hi: int) -> IntervalSet:
        """Absolute presence restricted to [lo, hi)."""
        if hi <= lo:
            return IntervalSet.empty()
        pairs: list[tuple[int, int]] = []
        if lo < self.base:
            pairs += [(iv.start, iv.end) for iv in self.transient.clip(lo, min(hi, self.base))]
        if hi > self.base and self.pattern:
            first = max(lo - self.base, 0) // self.period
            last = (hi - self.base - 1) // self.period
            for rep in range(first, last + 1):
                off = self.base + rep * self.period
                for iv in self.pattern:
                    s, e = max(iv.start + off, lo), min(iv.end + off, hi)
                    if s < e:
                        pairs.append((s, e))
        return IntervalSet.from_pairs(pairs)

    def max_recurring_run(self) -> int | float:
        """Longest presence run per period repetition; runs may wrap the boundary.

        INF when the pattern is full (present forever past base), 0 when the
        pattern is empty.
        """
        if not self.pattern:
            return 0
        if self.pattern.total() == self.period:
            return INF
        # Two unrolled copies capture every wrap-around run; with at least one
        # absent tick per period no run can exceed period - 1, so runs starting
        # in the first copy are complete within the window.
        doubled = self.pattern.union(self.pattern.shift(self.period))
        return max(iv.length for iv in doubled if iv.start < self.period)

    def has_usable_run(self, latency: int) -> bool:
        return self.max_recurring_run() >= latency


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _pattern_ticks(pattern: IntervalSet, period: int) -> list[bool]:
    ticks = [False] * period
    for iv in pattern:
        for t in range(iv.start, iv.end):
            ticks[t] = True
    return ticks


def _ticks_to_pairs(ticks: list[bool], offset: int = 0) -> list[tuple[int, int]]:
    pairs = []
    start = None
    for i, present in enumerate(ticks):
        if present and start is None:
            start = i
        elif not present and start is not None:
            pairs.append((start + offset, i + offset))
            start = None
    if start is not None:
        pairs.append((start + offset, len(ticks) + offset))
    return pairs


def normalize(sched: PresenceSchedule) -> PresenceSchedule:
    """Canonical form: minimal period first, then minimal base.

    The minimal period of a periodic boolean sequence divides every other
    period, so a divisor scan is complete. Lowering the base rotates the
    pattern's phase accordingly; the result is the unique representation of
    the presence function, which makes structural equality of schedules
    coincide with functional equality.
    """
    ticks = _pattern_ticks(sched.pattern, sched.period)
    period = sched.period
    for d in _divisors(sched.period):
        if all(ticks[i] == ticks[i % d] for i in range(sched.period)):
            period = d
            ticks = ticks[:d]
            break
    base = sched.base
    while base > 0:
        t = base - 1
        predicted = ticks[(t - sched.base) % period]
        actual = t in sched.transient
        if actual != predicted:
            break
        base -= 1
    shift = (sched.base - base) % period
    rotated = [ticks[(i - shift) % period] for i in range(period)]
    pattern = IntervalSet.from_pairs(_ticks_to_pairs(rotated))
    transient = sched.transient.clip(0, base)
    return PresenceSchedule(transient, base, period, pattern)


def from_absolute(bounded: IntervalSet, full_from: int | None = None) -> PresenceSchedule:
    """Schedule whose presence is exactly `bounded`, plus everything past
    `full_from` when given. Result is canonical."""
    if full_from is None:
        base = bounded.max_end or 0
        return normalize(PresenceSchedule(bounded, base, 1, IntervalSet.empty()))
    base = max(full_from, bounded.max_end or 0)
    transient = bounded.union(IntervalSet.from_pairs([(full_from, base)]) if full_from < base else IntervalSet.empty())
    return normalize(
        PresenceSchedule(transient.clip(0, base), base, 1, IntervalSet.from_pairs([(0, 1)]))
    )


def rebase(sched: PresenceSchedule, new_base: int) -> PresenceSchedule:
    """Equivalent (non-canonical) schedule with base raised to new_base."""
    if new_base < sched.base:
        raise DomainError("rebase can only raise the base")
    if new_base == sched.base:
        return sched
    transient = sched.transient.union(sched.unroll(sched.base, new_base))
    shift = (new_base - sched.base) % sched.period
    ticks = _pattern_ticks(sched.pattern, sched.period)
    rotated = [ticks[(i + shift) % sched.period] for i in range(sched.period)]
    pattern = IntervalSet.from_pairs(_ticks_to_pairs(rotated))
    return PresenceSchedule(transient, new_base, sched.period, pattern)
