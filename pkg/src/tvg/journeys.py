"""Temporal paths: feasibility, existence after a time, earliest arrival.

A hop departing at d crosses its edge iff the edge is present throughout
[d, d + latency); the next hop may depart no earlier than the previous
arrival. Searches are complete up to a horizon past which eventually-periodic
schedules offer no new reachability.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from tvg.core import EdgeKey, Tvg, VertexId
from tvg.errors import DomainError
from tvg.intervals import INF, IntervalSet, check_tick


@dataclass(frozen=True)
class TemporalPath:
    """Witness journey: (edge, departure) hops with feasible crossings."""

    hops: tuple[tuple[EdgeKey, int], ...]

    def arrival(self, g: Tvg) -> int:
        key, dep = self.hops[-1]
        return dep + g.edge(key).latency


def validate_path(g: Tvg, path: TemporalPath, p: VertexId, q: VertexId, after: int) -> bool:
    """Independent witness check: static connectivity from p to q, full
    presence over each crossing window, non-decreasing departures."""
    if not path.hops:
        return False
    at = p
    ready = after + 1
    for key, dep in path.hops:
        edge = g.edge(key)
        if at not in key:
            return False
        if dep < ready:
            return False
        if not all(edge.schedule.presence(t) for t in range(dep, dep + edge.latency)):
            return False
        at = key[1] if key[0] == at else key[0]
        ready = dep + edge.latency
    return at == q


def hop_feasible(g: Tvg, key: EdgeKey, t: int) -> bool:
    """True iff the edge is present at every tick of [t, t + latency)."""
    edge = g.edge(key)
    check_tick(t)
    return edge.schedule.unroll(t, t + edge.latency).covers(t, t + edge.latency)


def completeness_horizon(g: Tvg, after: int) -> int:
    """Departures past this bound cannot create new reachability: after the
    global transient every hop waits at most one period for a usable run."""
    if not g.edges:
        return after
    max_period = max(e.schedule.period for e in g.edges)
    max_latency = max(e.latency for e in g.edges)
    max_base = max(e.schedule.base for e in g.edges)
    return after + len(g.vertices) * (max_period + max_latency) + max_base


def _next_departure(runs: IntervalSet, t0: int, latency: int) -> int | None:
    """Earliest departure >= t0 with a fully-present crossing window."""
    for iv in runs:
        d = max(iv.start, t0)
        if d + latency <= iv.end:
            return d
    return None


def exists_temporal_path(g: Tvg, p: VertexId, q: VertexId, after: int) -> TemporalPath | None:
    """Witness temporal path from p to q with first departure > after, or None.

    Earliest-arrival label-correcting search; ties broken by vertex id and by
    smaller edge key so the witness is deterministic.
    """
    path, _ = _earliest_search(g, p, q, after)
    return path


def earliest_arrival(g: Tvg, p: VertexId, q: VertexId, after: int) -> int | float:
    """Minimal arrival over temporal paths departing after `after`; INF if
    none exists within the completeness horizon."""
    _, arrival = _earliest_search(g, p, q, after)
    return arrival


def _earliest_search(g: Tvg, p: VertexId, q: VertexId, after: int):
    check_tick(after, "after")
    for v in (p, q):
        if v not in g.vertices:
            raise DomainError(f"unknown vertex {v!r}")
    if p == q:
        raise DomainError("temporal paths are between distinct processes")
    horizon = completeness_horizon(g, after)
    runs = {e.key: e.schedule.unroll(0, horizon + e.latency + 1) for e in g.edges}
    adjacency: dict[str, list[EdgeKey]] = {v: [] for v in g.vertices}
    for e in g.edges:
        adjacency[e.u].append(e.key)
        adjacency[e.v].append(e.key)
    for v in adjacency:
        adjacency[v].sort()

    ready: dict[str, int] = {p: after + 1}
    parent: dict[str, tuple[str, EdgeKey, int]] = {}
    heap: list[tuple[int, str]] = [(after + 1, p)]
    done: set[str] = set()
    while heap:
        t, v = heapq.heappop(heap)
        if v in done or t > ready.get(v, INF):
            continue
        done.add(v)
        if v == q:
            break
        for key in adjacency[v]:
            w = key[1] if key[0] == v else key[0]
            if w in done:
                continue
            edge = g.edge(key)
            dep = _next_departure(runs[key], t, edge.latency)
            if dep is None or dep > horizon:
                continue
            arr = dep + edge.latency
            if arr < ready.get(w, INF):
                ready[w] = arr
                parent[w] = (v, key, dep)
                heapq.heappush(heap, (arr, w))
    if q not in ready:
        return None, INF
    hops: list[tuple[EdgeKey, int]] = []
    v = q
    while v != p:
        prev, key, dep = parent[v]
        hops.append((key, dep))
        v = prev
    hops.reverse()
    return TemporalPath(tuple(hops)), ready[q]
