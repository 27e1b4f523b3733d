"""Seeded random generation of connected-over-time TVG instances.

Every spanning-tree edge of the requested footprint gets a recurring pattern
with a run long enough to cross it, so the eventual footprint stays connected
and usable; non-tree edges become eventual missing edges with probability
`density`. The seed fully determines the result.
"""

from __future__ import annotations

import random

from tvg.core import Edge, StaticGraph, Tvg, is_cot
from tvg.errors import DomainError
from tvg.schedule import PresenceSchedule


def _spanning_tree(footprint: StaticGraph, rng: random.Random) -> set:
    edges = sorted(footprint.edges)
    rng.shuffle(edges)
    parent = {v: v for v in footprint.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    tree = set()
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.add((u, v))
    return tree


def _recurring_schedule(rng: random.Random, period: int, latency: int) -> PresenceSchedule:
    """Nonempty pattern containing at least one run of length >= latency."""
    run = rng.randint(latency, period)
    start = rng.randint(0, period - run)
    pattern = [(start, start + run)]
    base = rng.randint(0, 6)
    transient = []
    if base >= 2 and rng.random() < 0.5:
        s = rng.randint(0, base - 2)
        transient.append((s, rng.randint(s + 1, base)))
    return PresenceSchedule.make(transient, base, period, pattern)


def _missing_schedule(rng: random.Random) -> PresenceSchedule:
    """Empty pattern: the edge appears during a finite stretch only."""
    base = rng.randint(2, 10)
    s = rng.randint(0, base - 2)
    return PresenceSchedule.make([(s, rng.randint(s + 1, base))], base, 1, [])


def generate_tvg(seed: int, footprint: StaticGraph, period: int, density: float) -> Tvg:
    """A random member of COT with the given footprint."""
    if not footprint.is_connected():
        raise DomainError("footprint must be connected")
    if period < 1:
        raise DomainError("period must be positive")
    if not 0.0 <= density <= 1.0:
        raise DomainError("density must lie in [0, 1]")
    rng = random.Random(seed)
    tree = _spanning_tree(footprint, rng)
    edges = []
    for key in sorted(footprint.edges):
        edge_period = rng.randint(1, period)
        latency = rng.randint(1, max(1, min(3, edge_period)))
        if key not in tree and rng.random() < density:
            sched = _missing_schedule(rng)
        else:
            sched = _recurring_schedule(rng, edge_period, latency)
        edges.append(Edge(key[0], key[1], latency, sched))
    g = Tvg.make(footprint.vertices, edges)
    assert is_cot(g)
    return g
