from __future__ import annotations

import random

import pytest

from conftest import single_edge_tvg
from oracles import random_tvg, unroll_oracle
from tvg.core import (
    Edge,
    StaticGraph,
    Tvg,
    edge_key,
    eventual_missing_edges,
    eventual_underlying_graph,
    induced_subclass_check,
    is_cot,
    is_tree,
    neighborhood,
    oplus,
    presence,
    snapshot_sequence,
    underlying_graph,
)
from tvg.errors import DomainError
from tvg.intervals import INF, TimeSpec
from tvg.schedule import PresenceSchedule


def k3(ca_sched=None, latency=1):
    always = PresenceSchedule.always()
    ca = ca_sched or always
    return Tvg.make(
        ["a", "b", "c"],
        [Edge("a", "b", latency, always), Edge("b", "c", latency, always),
         Edge("a", "c", latency, ca)],
    )


def test_presence_and_unknown_edge():
    g = single_edge_tvg([(0, 2)], 2, 3, [(0, 1)])
    key = ("a", "b")
    assert presence(g, key, 1)
    assert not presence(g, key, 4)
    assert presence(g, key, 5)
    with pytest.raises(DomainError):
        presence(g, ("a", "z"), 0)


def test_edge_invariants():
    with pytest.raises(DomainError):
        Edge.make("a", "a", 1, PresenceSchedule.always())
    with pytest.raises(DomainError):
        Edge.make("a", "b", 0, PresenceSchedule.always())
    with pytest.raises(DomainError):
        Edge.make("a", "b", 1, PresenceSchedule.make([], 0, 1, []))


def test_tvg_invariants():
    e = Edge.make("a", "b", 1, PresenceSchedule.always())
    with pytest.raises(DomainError):
        Tvg.make(["a"], [e])
    with pytest.raises(DomainError):
        Tvg.make(["a", "b"], [e, Edge.make("b", "a", 2, PresenceSchedule.always())])


def test_snapshot_single_window():
    g = single_edge_tvg([(1, 3)], 3, 1, [])
    snaps = snapshot_sequence(g, 5)
    assert [(t, sorted(s.edges)) for t, s in snaps] == [
        (0, []), (1, [("a", "b")]), (3, [])]


def test_snapshot_static():
    g = k3()
    snaps = snapshot_sequence(g, 10)
    assert len(snaps) == 1
    assert snaps[0][0] == 0
    assert snaps[0][1] == underlying_graph(g)


def test_snapshot_two_edges():
    ab = PresenceSchedule.make([(0, 2)], 2, 1, [])
    bc = PresenceSchedule.make([(1, 4)], 4, 1, [])
    g = Tvg.make(["a", "b", "c"], [Edge("a", "b", 1, ab), Edge("b", "c", 1, bc)])
    snaps = snapshot_sequence(g, 6)
    assert [t for t, _ in snaps] == [0, 1, 2, 4]
    for (t1, s1), (t2, s2) in zip(snaps, snaps[1:]):
        assert s1 != s2


def test_underlying_graph():
    g = k3()
    assert underlying_graph(g) == StaticGraph.make("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    empty = Tvg.make(["a", "b"], [])
    assert underlying_graph(empty).edges == frozenset()


def test_eventual_missing_and_eventual_graph():
    recurring = PresenceSchedule.make([(0, 3)], 3, 4, [(0, 1)])
    assert not Edge("a", "b", 1, recurring).schedule.eventually_missing
    g = k3(ca_sched=PresenceSchedule.make([(0, 5)], 5, 1, []))
    assert eventual_missing_edges(g) == {("a", "c")}
    ev = eventual_underlying_graph(g)
    assert ev == StaticGraph.make("abc", [("a", "b"), ("b", "c")])
    assert ev.is_connected()


def test_missing_equals_unroll_oracle_on_random_instances():
    rng = random.Random(42)
    for _ in range(120):
        g = random_tvg(rng)
        for e in g.edges:
            horizon = e.schedule.base + e.schedule.period
            recurs = any(unroll_oracle(e.schedule, horizon)[e.schedule.base:])
            assert (e.key in eventual_missing_edges(g)) == (not recurs)


def test_neighborhood():
    g = k3()
    assert neighborhood(g, "a") == {"b", "c"}
    lone = Tvg.make(["a", "b", "x"], [Edge.make("a", "b", 1, PresenceSchedule.always())])
    assert neighborhood(lone, "x") == frozenset()
    with pytest.raises(DomainError):
        neighborhood(g, "zz")


def test_oplus_identity_and_union():
    g = single_edge_tvg([(0, 1)], 1, 1, [])
    assert oplus(g, []) == g
    g2 = oplus(g, [(("a", "b"), TimeSpec.from_pairs([(3, 5)]))])
    e = g2.edge(("a", "b"))
    assert e.schedule.transient.pairs() == [[0, 1], [3, 5]]
    assert e.schedule.eventually_missing


def test_oplus_matches_pointwise_or():
    rng = random.Random(7)
    for _ in range(60):
        g = random_tvg(rng, n_max=4)
        key = rng.choice(g.edges).key
        spans = [(s, s + rng.randint(1, 4)) for s in rng.sample(range(0, 30), 3)]
        unbounded = rng.random() < 0.4
        pairs = list(spans) + ([(rng.randint(0, 40), INF)] if unbounded else [])
        spec = TimeSpec.from_pairs(pairs)
        g2 = oplus(g, [(key, spec)])
        sched, sched2 = g.edge(key).schedule, g2.edge(key).schedule
        horizon = max(sched.base, sched2.base) + 2 * sched.period * sched2.period
        before = unroll_oracle(sched, horizon)
        after = unroll_oracle(sched2, horizon)
        assert after == [b or (t in spec) for t, b in enumerate(before)]


def test_oplus_preserves_underlying_graph():
    rng = random.Random(11)
    for _ in range(40):
        g = random_tvg(rng, n_max=4)
        key = rng.choice(g.edges).key
        spec = TimeSpec.from_pairs([(rng.randint(0, 20), rng.randint(21, 40))])
        assert underlying_graph(oplus(g, [(key, spec)])) == underlying_graph(g)


def test_oplus_unknown_edge():
    g = k3()
    with pytest.raises(DomainError):
        oplus(g, [(("a", "z"), TimeSpec.from_pairs([(0, 1)]))])


def test_is_cot_examples():
    g = single_edge_tvg([], 0, 4, [(0, 2)], latency=1)
    assert is_cot(g)
    g2 = k3(ca_sched=PresenceSchedule.make([(0, 5)], 5, 1, []))
    assert is_cot(g2)
    # eventual footprint splits into two components
    dead_bridge = Tvg.make(
        ["a", "b", "c"],
        [Edge("a", "b", 1, PresenceSchedule.always()),
         Edge("b", "c", 1, PresenceSchedule.make([(0, 3)], 3, 1, []))],
    )
    assert not is_cot(dead_bridge)


def test_is_cot_needs_usable_run():
    # recurring every 4 ticks but only 1-tick runs: a latency-2 edge never crosses
    g = single_edge_tvg([], 0, 4, [(0, 1)], latency=2)
    assert not is_cot(g)
    # wrap-around run of length 2 is enough
    g2 = single_edge_tvg([], 0, 4, [(3, 4), (0, 1)], latency=2)
    assert is_cot(g2)


def test_is_tree():
    path = StaticGraph.make("abc", [("a", "b"), ("b", "c")])
    tri = StaticGraph.make("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert is_tree(path)
    assert not is_tree(tri)
    assert not is_tree(StaticGraph.make("abc", [("a", "b")]))


def test_induced_subclass_check():
    g = k3()
    tri = StaticGraph.make("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    path = StaticGraph.make("abc", [("a", "b"), ("b", "c")])
    assert induced_subclass_check(g, [tri])
    assert not induced_subclass_check(g, [path])
    assert induced_subclass_check(g, [path, tri])
