"""Time-varying graphs with eventually-periodic presence, and their
graph-level derivations: snapshots, footprints, eventual footprints,
connected-over-time membership, and presence splicing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Iterable

from tvg.errors import DomainError
from tvg.intervals import IntervalSet, TimeSpec, check_tick
from tvg.schedule import PresenceSchedule, from_absolute, normalize, rebase

VertexId = str
EdgeKey = tuple[str, str]


def edge_key(u: VertexId, v: VertexId) -> EdgeKey:
    """Canonical unordered pair: endpoints sorted."""
    if u == v:
        raise DomainError(f"self-loop {u!r}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class StaticGraph:
    """Simple loop-free undirected graph with labeled vertices."""

    vertices: frozenset[str]
    edges: frozenset[EdgeKey]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise DomainError(f"self-loop {u!r}")
            if u > v:
                raise DomainError(f"edge key ({u!r}, {v!r}) not in canonical order")
            if u not in self.vertices or v not in self.vertices:
                raise DomainError(f"edge ({u!r}, {v!r}) has endpoint outside the vertex set")

    @classmethod
    def make(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> "StaticGraph":
        return cls(frozenset(vertices), frozenset(edge_key(u, v) for u, v in edges))

    def neighbors(self, v: str) -> frozenset[str]:
        if v not in self.vertices:
            raise DomainError(f"unknown vertex {v!r}")
        return frozenset(b if a == v else a for a, b in self.edges if v in (a, b))

    def is_connected(self) -> bool:
        if len(self.vertices) <= 1:
            return True
        start = min(self.vertices)
        seen = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return seen == self.vertices

    def to_json(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "edges": [[u, v] for u, v in sorted(self.edges)],
        }


EMPTY_GRAPH = StaticGraph(frozenset(), frozenset())


@dataclass(frozen=True)
class Edge:
    """Undirected edge with a constant latency and a presence schedule.

    Construction normalizes the schedule, so equal edges have equal fields.
    """

    u: str
    v: str
    latency: int
    schedule: PresenceSchedule

    def __post_init__(self):
        if self.u >= self.v:
            raise DomainError(f"edge endpoints ({self.u!r}, {self.v!r}) must be distinct and sorted")
        if not isinstance(self.latency, int) or self.latency < 1:
            raise DomainError(f"latency must be a positive integer, got {self.latency!r}")
        object.__setattr__(self, "schedule", normalize(self.schedule))
        if self.schedule.is_empty:
            raise DomainError(f"edge ({self.u!r}, {self.v!r}) is never present")

    @classmethod
    def make(cls, u: str, v: str, latency: int, schedule: PresenceSchedule) -> "Edge":
        a, b = edge_key(u, v)
        return cls(a, b, latency, schedule)

    @property
    def key(self) -> EdgeKey:
        return (self.u, self.v)


@dataclass(frozen=True)
class Tvg:
    """Immutable time-varying graph over discrete ticks, lifetime [0, inf)."""

    vertices: frozenset[str]
    edges: tuple[Edge, ...]
    process_latency: int = 0

    def __post_init__(self):
        if not isinstance(self.process_latency, int) or self.process_latency < 0:
            raise DomainError("process latency must be a non-negative integer")
        keys = [e.key for e in self.edges]
        if keys != sorted(keys):
            raise DomainError("edges must be sorted by key")
        if len(set(keys)) != len(keys):
            raise DomainError("at most one edge per vertex pair")
        for e in self.edges:
            if e.u not in self.vertices or e.v not in self.vertices:
                raise DomainError(f"edge ({e.u!r}, {e.v!r}) has endpoint outside the vertex set")

    @classmethod
    def make(cls, vertices: Iterable[str], edges: Iterable[Edge], process_latency: int = 0) -> "Tvg":
        return cls(frozenset(vertices), tuple(sorted(edges, key=lambda e: e.key)), process_latency)

    @cached_property
    def edge_map(self) -> dict[EdgeKey, Edge]:
        return {e.key: e for e in self.edges}

    def edge(self, key: EdgeKey) -> Edge:
        try:
            return self.edge_map[key]
        except KeyError:
            raise DomainError(f"unknown edge {key!r}") from None

    def replace_schedule(self, key: EdgeKey, schedule: PresenceSchedule) -> "Tvg":
        old = self.edge(key)
        new_edge = Edge(old.u, old.v, old.latency, schedule)
        edges = tuple(new_edge if e.key == key else e for e in self.edges)
        return Tvg(self.vertices, edges, self.process_latency)


def presence(g: Tvg, key: EdgeKey, t: int) -> bool:
    """Whether the edge is available at tick t."""
    return g.edge(key).schedule.presence(t)


def underlying_graph(g: Tvg) -> StaticGraph:
    """Footprint: every declared edge appears at least once by construction."""
    return StaticGraph(g.vertices, frozenset(e.key for e in g.edges))


def eventual_missing_edges(g: Tvg) -> frozenset[EdgeKey]:
    """Edges that appear only finitely often (empty canonical pattern)."""
    return frozenset(e.key for e in g.edges if e.schedule.eventually_missing)


def eventual_underlying_graph(g: Tvg) -> StaticGraph:
    missing = eventual_missing_edges(g)
    return StaticGraph(g.vertices, frozenset(e.key for e in g.edges if e.key not in missing))


def neighborhood(g: Tvg, p: VertexId) -> frozenset[str]:
    """Footprint neighbors of p."""
    return underlying_graph(g).neighbors(p)


def snapshot_sequence(g: Tvg, horizon: int) -> list[tuple[int, StaticGraph]]:
    """Topological event times up to `horizon`, each with the static graph
    of edges present until the next event. Consecutive snapshots differ."""
    check_tick(horizon, "horizon")
    unrolled = {e.key: e.schedule.unroll(0, horizon + 1) for e in g.edges}
    events = {0}
    for presence_set in unrolled.values():
        for iv in presence_set:
            events.add(iv.start)
            if iv.end <= horizon:
                events.add(iv.end)
    out = []
    for t in sorted(events):
        edges = frozenset(k for k, s in unrolled.items() if t in s)
        out.append((t, StaticGraph(g.vertices, edges)))
    return out


def global_base(g: Tvg) -> int:
    return max((e.schedule.base for e in g.edges), default=0)


def global_period(g: Tvg) -> int:
    return lcm(*(e.schedule.period for e in g.edges)) if g.edges else 1


def oplus(g: Tvg, additions: Iterable[tuple[EdgeKey, TimeSpec]]) -> Tvg:
    """Splice operator: force the listed edges present over the given time
    sets, leaving everything else unchanged. Preserves the underlying graph."""
    merged: dict[EdgeKey, TimeSpec] = {}
    for key, spec in additions:
        g.edge(key)
        merged[key] = merged[key].union(spec) if key in merged else spec
    result = g
    for key, spec in sorted(merged.items()):
        if not spec:
            continue
        sched = g.edge(key).schedule
        if spec.unbounded_from is None:
            cut = max(sched.base, spec.bounded.max_end or 0)
            explicit = sched.unroll(0, cut).union(spec.bounded)
            tail = PresenceSchedule(explicit.clip(0, cut), cut, sched.period, _pattern_at(sched, cut))
            result = result.replace_schedule(key, normalize(tail))
        else:
            cut = max(sched.base, spec.unbounded_from, spec.bounded.max_end or 0)
            explicit = sched.unroll(0, cut).union(spec.bounded).union(
                IntervalSet.from_pairs([(spec.unbounded_from, cut)]) if spec.unbounded_from < cut else IntervalSet.empty()
            )
            result = result.replace_schedule(key, from_absolute(explicit, cut))
    return result


def _pattern_at(sched: PresenceSchedule, new_base: int) -> IntervalSet:
    """The schedule's pattern re-phased to a base at or past the old one."""
    return rebase(sched, new_base).pattern


def is_tree(s: StaticGraph) -> bool:
    return s.is_connected() and len(s.edges) == len(s.vertices) - 1


def induced_subclass_check(g: Tvg, footprints: Iterable[StaticGraph]) -> bool:
    """Membership of the footprint in the given set, by labeled equality."""
    return underlying_graph(g) in set(footprints)


def is_cot(g: Tvg) -> bool:
    """Connected-over-time decision procedure for eventually-periodic TVGs:
    the eventual footprint is connected and every recurring edge has, per
    period repetition, at least one presence run long enough to cross it."""
    if not eventual_underlying_graph(g).is_connected():
        return False
    for e in g.edges:
        if e.schedule.eventually_missing:
            continue
        if not e.schedule.has_usable_run(e.latency):
            return False
    return True
